#include <doctest.h>

#include <cmath>

#include "gibbsmix/approx.hpp"

using namespace gibbsmix;

namespace {

SampledFunction ramp(int n) {
    Vec s(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) s[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / n;
    return make_sampled(std::move(s));
}

SampledFunction step(int n, double h) {
    Vec s(static_cast<std::size_t>(n), 0.0);
    for (int i = n / 2; i < n; ++i) s[static_cast<std::size_t>(i)] = h;
    return make_sampled(std::move(s));
}

SampledFunction staircase(int n) {
    Vec s(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        s[static_cast<std::size_t>(i - 1)] = std::floor(5.0 * i / (n + 1.0));
    }
    return make_sampled(std::move(s));
}

}  // namespace

TEST_CASE("series constant") {
    double s = 0.0;
    for (int p = 200; p >= 1; --p) {
        s += p * p * p * std::pow(2.0, -p / 2.0 + 1.0);
    }
    CHECK(s == doctest::Approx(kCompressConstant).epsilon(1e-12));
}

TEST_CASE("total variation") {
    CHECK(discrete_total_variation({1, 1, 1, 1}) == 0.0);
    CHECK(discrete_total_variation({0, 1, 0, 1}) == 3.0);
    CHECK(ramp(64).total_variation == doctest::Approx(63.0 / 64.0));
    CHECK(step(64, 2.5).total_variation == doctest::Approx(2.5));
    CHECK_THROWS(make_sampled({1, 2, 3}));  // not a power of two
}

TEST_CASE("haar coefficients of simple functions") {
    // constant: every wavelet coefficient vanishes
    const HaarCoefficients hc = haar_coefficients(make_sampled(Vec(16, 3.0)));
    CHECK(hc.c[0][0] == doctest::Approx(3.0));
    for (int j = 1; j <= hc.j_max; ++j) {
        for (double c : hc.c[static_cast<std::size_t>(j)]) CHECK(std::abs(c) <= 1e-14);
    }
    // f = phi_{2,1} sampled: its own coefficient is 1, everything else 0
    const HaarCoefficients hv = haar_coefficients(make_sampled(haar_vector(16, 2, 1)));
    for (int j = 0; j <= hv.j_max; ++j) {
        for (std::size_t k = 0; k < hv.c[static_cast<std::size_t>(j)].size(); ++k) {
            const double expect = (j == 2 && k == 1) ? 1.0 : 0.0;
            CHECK(hv.c[static_cast<std::size_t>(j)][k] == doctest::Approx(expect).epsilon(1e-13));
        }
    }
    // ramp at n=8: c_{1,0} = (1/8)(-(1+2+3+4) + (5+6+7+8))/8 = 0.25
    CHECK(haar_coefficients(ramp(8)).c[1][0] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("linear approximation endpoints") {
    const SampledFunction f = staircase(32);
    const SampledFunction full = linear_approx(f, dyadic_levels(32));
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        CHECK(full.samples[i] == doctest::Approx(f.samples[i]).epsilon(1e-12));
    }
    const SampledFunction flat = linear_approx(f, 0);
    double mean = 0.0;
    for (double v : f.samples) mean += v;
    mean /= static_cast<double>(f.samples.size());
    for (double v : flat.samples) CHECK(v == doctest::Approx(mean).epsilon(1e-12));
    CHECK_THROWS(linear_approx(f, -1));
    CHECK_THROWS(linear_approx(f, 99));
}

TEST_CASE("compressed keep counts") {
    CHECK(compressed_keep_count(3, 3) == 2);   // K_{J,J} = 2^{J-2}
    CHECK(compressed_keep_count(5, 5) == 8);
    CHECK(compressed_keep_count(4, 3) == 0);   // floor(2/8)
    CHECK(compressed_keep_count(6, 4) == 0);   // floor(4/27)
}

TEST_CASE("compressed approximant keeps at most 2^J coefficients") {
    for (const SampledFunction& f : {ramp(256), step(256, 1.0), staircase(256)}) {
        for (int j = 1; j <= dyadic_levels(256); ++j) {
            CHECK(compressed_kept_total(f, j) <= (1 << j));
        }
    }
}

TEST_CASE("coefficient-sum bound holds for bounded-variation samples") {
    for (const SampledFunction& f : {ramp(256), step(256, 1.0), staircase(256), ramp(64)}) {
        for (bool ok : bv_coefficient_bound_check(f)) CHECK(ok);
    }
    // constant: both sides zero
    for (bool ok : bv_coefficient_bound_check(make_sampled(Vec(16, 7.0)))) CHECK(ok);
}

TEST_CASE("approximation error bounds") {
    for (const SampledFunction& f : {ramp(256), step(256, 1.0), staircase(256)}) {
        const double v = f.total_variation;
        const int jn = dyadic_levels(256);
        for (int j = 0; j <= jn; ++j) {
            const double lin_err = distance_n(f.samples, linear_approx(f, j).samples);
            CHECK(lin_err <= 2.0 * v * std::pow(2.0, -j / 2.0) + 1e-12);
        }
        for (int j = 1; j <= jn; ++j) {
            const double comp_err = distance_n(f.samples, compressed_approx(f, j).samples);
            CHECK(comp_err <= kCompressConstant * v * std::pow(2.0, -static_cast<double>(j)) + 1e-12);
        }
    }
}

TEST_CASE("compressed approximant is at least as close as full truncation is wasteful") {
    // dropping only the smallest coefficients: error never exceeds the
    // level-(J-1) linear approximant's error
    const SampledFunction f = staircase(256);
    for (int j = 1; j <= dyadic_levels(256); ++j) {
        const double comp = distance_n(f.samples, compressed_approx(f, j).samples);
        const double lin = distance_n(f.samples, linear_approx(f, j - 1).samples);
        CHECK(comp <= lin + 1e-12);
    }
}
