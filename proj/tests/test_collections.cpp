#include <doctest.h>

#include <cmath>

#include "gibbsmix/collections.hpp"
#include "gibbsmix/harness.hpp"
#include "gibbsmix/mixer.hpp"
#include "gibbsmix/rng.hpp"

using namespace gibbsmix;

TEST_CASE("ordered_linear priors are geometric and normalized") {
    const ModelCollection c = ordered_linear(standard_basis_design(8, 2), std::log(2.0));
    REQUIRE(c.models.size() == 3);
    CHECK(c.models[0].prior == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
    CHECK(c.models[1].prior == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
    CHECK(c.models[2].prior == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    // the ratio is e^{-alpha} throughout, for any alpha
    const ModelCollection c2 = ordered_linear(standard_basis_design(16, 5), 0.7);
    double total = 0.0;
    for (std::size_t m = 1; m < c2.models.size(); ++m) {
        CHECK(c2.models[m].prior / c2.models[m - 1].prior ==
              doctest::Approx(std::exp(-0.7)).epsilon(1e-13));
    }
    for (const Model& m : c2.models) total += m.prior;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c2.models[3].weight_L == doctest::Approx(1.5));  // dim/2
}

TEST_CASE("unordered_linear priors") {
    // H_3 = 1 + 1/2 + 1/3 + 1/4 = 25/12, pi_empty = 1/H_q
    const ModelCollection c = unordered_linear(standard_basis_design(12, 4), 3);
    CHECK(c.models[0].column_indices.empty());
    CHECK(c.models[0].prior == doctest::Approx(12.0 / 25.0).epsilon(1e-13));
    double total = 0.0;
    for (const Model& m : c.models) total += m.prior;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // p=4, q=2: 1 + 4 + 6 = 11 models
    const ModelCollection c2 = unordered_linear(standard_basis_design(12, 4), 2);
    CHECK(c2.models.size() == 11);
    double total2 = 0.0;
    for (const Model& m : c2.models) total2 += m.prior;
    CHECK(total2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(unordered_linear(standard_basis_design(60, 50), 10));  // too many
}

TEST_CASE("all_subsets priors and weights") {
    const int p = 4;
    const double alpha = 1.5, b = 2.0;
    const ModelCollection c = all_subsets(standard_basis_design(10, p), alpha, b);
    CHECK(c.models.size() == 16);
    double total = 0.0;
    for (const Model& m : c.models) {
        total += m.prior;
        const double d = static_cast<double>(m.column_indices.size());
        CHECK(m.weight_L == doctest::Approx(b * d));
        // pi_m = (1 + p^-alpha)^-p p^{-alpha |m|}
        const double expect = std::pow(1.0 + std::pow(4.0, -alpha), -4.0) *
                              std::pow(4.0, -alpha * d);
        CHECK(m.prior == doctest::Approx(expect).epsilon(1e-13));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("haar vectors") {
    // n=8: v_{1,0} has entries -1 on the first half and +1 on the second
    const Vec v10 = haar_vector(8, 1, 0);
    for (int i = 0; i < 4; ++i) CHECK(v10[static_cast<std::size_t>(i)] == -1.0);
    for (int i = 4; i < 8; ++i) CHECK(v10[static_cast<std::size_t>(i)] == 1.0);
    const Vec v00 = haar_vector(8, 0, 0);
    for (double x : v00) CHECK(x == 1.0);
    // scale 2^{(j-1)/2} at level 2, support split in quarters
    const Vec v21 = haar_vector(8, 2, 1);
    CHECK(v21[4] == doctest::Approx(-std::sqrt(2.0)));
    CHECK(v21[6] == doctest::Approx(std::sqrt(2.0)));
    CHECK(v21[0] == 0.0);
    CHECK_THROWS(haar_vector(10, 1, 0));
    CHECK_THROWS(haar_vector(8, 1, 2));
}

TEST_CASE("haar family size and orthonormality") {
    for (int n : {8, 16, 64}) {
        const HaarFamily f = haar_family(n);
        CHECK(static_cast<int>(f.design.columns.size()) == n / 2);
        CHECK(gram_check(f.design) <= 1e-12);
    }
    CHECK_THROWS(haar_family(4));
    CHECK_THROWS(haar_family(12));
}

TEST_CASE("haar estimator variance matches the residual-variance formula") {
    const int n = 32;
    CounterRng rng(21);
    Vec y(static_cast<std::size_t>(n));
    for (double& v : y) v = rng.normal() + 0.3;

    const HaarEstimate est = haar_estimator(y, 0.1);
    // sigma2_hat = 2(<Y,Y>_n - sum Z^2) equals ||Y - Pi_* Y||^2 / (n/2)
    const HaarFamily fam = haar_family(n);
    Model all;
    all.id = "full";
    all.prior = 1.0;
    std::vector<int> star;
    for (int j = 0; j < n / 2; ++j) {
        all.column_indices.push_back(j);
        star.push_back(j);
    }
    const ModelCollection c = make_collection(fam.design, {all}, star);
    CHECK(est.sigma2_hat == doctest::Approx(residual_variance(y, c)).epsilon(1e-10));
}

TEST_CASE("haar estimator shrinks towards zero and transitions at e n/2") {
    const int n = 16;
    Vec y(static_cast<std::size_t>(n), 0.0);
    CounterRng rng(3);
    for (double& v : y) v = 0.01 * rng.normal();
    y[0] += 10.0;  // a strong local feature

    const HaarEstimate est = haar_estimator(y, 0.5);
    for (double c : est.shrink.coefficients) {
        CHECK(c > 0.0);
        CHECK(c < 1.0);
    }
    // transition: coefficient is exactly 1/2 when n beta Z^2/sigma2 = 1 + log(n/2)
    const double s2 = est.sigma2_hat;
    const double zt = std::sqrt((1.0 + std::log(n / 2.0)) * s2 / (0.5 * n));
    const double c_half = 1.0 / (1.0 + std::exp(std::log(n / 2.0) + 1.0 -
                                                n * 0.5 * zt * zt / s2));
    CHECK(c_half == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("besov descriptors") {
    // kappa=0.5, n=1024: J_* = floor(log2(256)) = 8
    CHECK(besov_j_star(0.5, 1024) == 8);
    const std::vector<BesovDescriptor> ds = besov_descriptors(0.5, 1024);
    CHECK(ds.size() == 8);
    for (const BesovDescriptor& d : ds) {
        const double two_j = std::pow(2.0, d.j_level);
        CHECK(d.dim_bound <= 2.2 * two_j);
        CHECK(-d.log_pi <= 4.0 * two_j);
        CHECK(d.weight_l == doctest::Approx(1.1 * two_j));
        CHECK(d.cardinality_log >= 0.0);
    }
    // at J = J_* every retained level keeps everything: log |M_{J_*}| = 0
    CHECK(ds.back().cardinality_log == doctest::Approx(0.0));
    CHECK_THROWS(besov_descriptors(1.5, 1024));
    CHECK_THROWS(besov_descriptors(0.5, 4));
}

TEST_CASE("besov priors sum to one over the whole family") {
    // sum_m pi_m = sum_J |M_J| pi_(m in M_J) = sum_J 2^{-J} / (1 - 2^{-J_*}) = 1
    const std::vector<BesovDescriptor> ds = besov_descriptors(0.5, 1024);
    double total = 0.0;
    for (const BesovDescriptor& d : ds) {
        total += std::exp(d.cardinality_log + d.log_pi);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fourier design") {
    const DesignFamily d = fourier_design(60);
    CHECK(d.p() == 41);
    // column 21 is the constant sqrt(1/n)
    for (double x : d.columns[20]) CHECK(x == doctest::Approx(std::sqrt(1.0 / 60.0)));
    CHECK(gram_check(d) <= 1e-10);
    CHECK(std::abs(dot(d.columns[0], d.columns[20], d.ip)) <= 1e-12);
    CHECK_THROWS(fourier_design(41));
}
