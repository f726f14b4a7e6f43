#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "gibbsmix/bounds.hpp"
#include "gibbsmix/collections.hpp"
#include "gibbsmix/harness.hpp"

using namespace gibbsmix;

namespace {

// cheap quadrature settings for the smoke tests; the acceptance suite uses
// the defaults
CBetaOptions fast_opts() {
    CBetaOptions o;
    o.z_panels = 4000;
    o.x_grid = 160;
    o.x_tol = 1e-5;
    return o;
}

}  // namespace

TEST_CASE("model risk") {
    DesignFamily d = standard_basis_design(4, 2);
    Model m0{"empty", {}, 0.25, 0.0};
    Model m2{"S2", {0, 1}, 0.75, 1.0};
    const ModelCollection c = make_collection(d, {m0, m2}, {0, 1});
    // mu in S_m: risk = dim sigma^2
    CHECK(model_risk({1, -2, 0, 0}, 1, c, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
    // m = empty: risk = ||mu||^2
    CHECK(model_risk({1, 2, 3, 4}, 0, c, 1.0) == doctest::Approx(30.0).epsilon(1e-13));
    // n=4, mu=(1,2,3,4), m = span{e1,e2}, sigma=1: (9+16) + 2 = 27
    CHECK(model_risk({1, 2, 3, 4}, 1, c, 1.0) == doctest::Approx(27.0).epsilon(1e-13));
    CHECK_THROWS(model_risk({1, 2, 3, 4}, 1, c, 0.0));
}

TEST_CASE("theorem 1 bounds: singleton dim-0 model gives equal rhs") {
    DesignFamily d = standard_basis_design(8, 2);
    Model m{"empty", {}, 1.0, 0.0};
    const ModelCollection c = make_collection(d, {m}, {0, 1});
    const Vec mu = {1, 0.5, 0, 0, 0, 0, 0, 0};
    const BoundReport r = theorem1_bounds(mu, c, 1.0, 0.1);
    CHECK(r.fgibbs_rhs == doctest::Approx(r.foracle_rhs).epsilon(1e-12));
}

TEST_CASE("theorem 1 bounds: fgibbs never exceeds foracle") {
    const ModelCollection c = all_subsets(standard_basis_design(16, 4), 1.0, 1.0);
    const double beta = beta_max_theorem1(16, 12);
    for (double scale : {0.0, 0.5, 2.0, 10.0}) {
        Vec mu(16, 0.0);
        mu[0] = 3.0 * scale;
        mu[1] = -scale;
        mu[5] = scale;  // outside S_*
        const BoundReport r = theorem1_bounds(mu, c, 1.0, beta);
        CHECK(r.fgibbs_rhs <= r.foracle_rhs + 1e-10);
        CHECK(r.foracle_rhs <= r.crude_rhs + 1e-10);
        CHECK(r.epsilon_n == doctest::Approx(1.0 / (32.0 * std::log(16.0))));
    }
}

TEST_CASE("theorem 1 bounds: mu = 0 closed form") {
    const ModelCollection c = ordered_linear(standard_basis_design(16, 4), 1.0);
    const double beta = 0.05, sigma2 = 1.0;
    const Vec mu(16, 0.0);
    const BoundReport r = theorem1_bounds(mu, c, sigma2, beta);
    CHECK(r.best_model == 0);  // the empty model
    CHECK(r.sigma_bar2 == doctest::Approx(sigma2));
    const double eps = 1.0 / (32.0 * std::log(16.0));
    const double expect = (1.0 + eps) * (sigma2 / beta) * (0.0 - std::log(c.models[0].prior)) +
                          sigma2 / (2.0 * std::log(16.0));
    CHECK(r.foracle_rhs == doctest::Approx(expect).epsilon(1e-12));
    CHECK(r.per_model_risk[0] == doctest::Approx(0.0 + 0.0));
    CHECK(r.per_model_risk[2] == doctest::Approx(2.0 * sigma2));
}

TEST_CASE("gamma_beta") {
    CHECK(gamma_beta(1, 0.7) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(gamma_beta(3, 0.5) == doctest::Approx(2.0487129074949031).epsilon(1e-13));
    double prev = 0.0;
    for (int p : {1, 2, 5, 20, 100}) {
        const double g = gamma_beta(p, 0.5);
        CHECK(g > prev);
        prev = g;
    }
    CHECK_THROWS(gamma_beta(0, 0.5));
    CHECK_THROWS(gamma_beta(3, 0.0));
}

TEST_CASE("c_beta basic properties") {
    const CBetaOptions o = fast_opts();
    const double c3 = c_beta(3, 0.5, o);
    CHECK(c3 >= 0.6);
    CHECK(c3 <= 1.0);
    CHECK(c_beta(10, 0.5, o) <= 1.0);
    CHECK(c_beta(100, 0.25, o) <= 16.0);
    CHECK_THROWS(c_beta(2, 0.5));
}

TEST_CASE("prop2 bound: mu = 0 and single spike") {
    const CBetaOptions o = fast_opts();
    const DesignFamily d = standard_basis_design(8, 3);
    const double beta = 0.5, sigma2 = 1.0;
    const double gamma2 = 2.0 + std::log(3.0) / beta;

    const double at_zero = prop2_bound(Vec(8, 0.0), d, sigma2, beta, o);
    CHECK(at_zero == doctest::Approx(c_beta(3, beta, o) * gamma2 * sigma2).epsilon(1e-10));

    // mu = 10 sigma v_1: check against exhaustive enumeration over all 8 subsets
    Vec mu(8, 0.0);
    mu[0] = 10.0;
    const double got = prop2_bound(mu, d, sigma2, beta, o);
    const double coef[3] = {10.0, 0.0, 0.0};
    double inf = 1e300;
    std::uint32_t best = 0;
    for (std::uint32_t m = 0; m < 8; ++m) {
        double bias = 0.0;
        int dim = 0;
        for (int j = 0; j < 3; ++j) {
            if (m & (1u << j)) ++dim;
            else bias += coef[j] * coef[j];
        }
        const double val = bias + gamma2 * (dim + 1.0) * sigma2;
        if (val < inf) {
            inf = val;
            best = m;
        }
    }
    CHECK(best == 1u);  // infimum at m = {1}
    CHECK(got == doctest::Approx(c_beta(3, beta, o) * inf).epsilon(1e-10));
    // bias outside S_* only adds
    Vec mu2 = mu;
    mu2[5] = 2.0;
    CHECK(prop2_bound(mu2, d, sigma2, beta, o) == doctest::Approx(got + 4.0).epsilon(1e-10));
}

TEST_CASE("appendix bound matches exhaustive enumeration") {
    const DesignFamily d = standard_basis_design(40, 5);
    const double beta = 0.2, b = 1.0, sigma2 = 1.0;
    Vec mu(40, 0.0);
    mu[0] = 8.0;

    const double got = appendixA2_bound(mu, d, sigma2, beta, b);
    const double logp = std::log(5.0);
    const double penalty = (b + logp) * sigma2 / beta;  // sigma_bar2 = sigma2 here
    const double coef[5] = {8.0, 0.0, 0.0, 0.0, 0.0};
    double inf = 1e300;
    for (std::uint32_t m = 0; m < 32; ++m) {
        double bias = 0.0;
        int dim = 0;
        for (int j = 0; j < 5; ++j) {
            if (m & (1u << j)) ++dim;
            else bias += coef[j] * coef[j];
        }
        inf = std::min(inf, bias + penalty * (dim + 1.0) + (2.0 + b + logp) * sigma2);
    }
    CHECK(got == doctest::Approx(16.0 * inf).epsilon(1e-12));

    // mu = 0 closed form, and monotonicity in b
    const double zero = appendixA2_bound(Vec(40, 0.0), d, sigma2, beta, b);
    CHECK(zero == doctest::Approx(16.0 * (penalty + (2.0 + b + logp) * sigma2)).epsilon(1e-12));
    CHECK(appendixA2_bound(mu, d, sigma2, beta, 2.0) > got);
}

TEST_CASE("appendix bound precondition errors are named") {
    const DesignFamily d = standard_basis_design(40, 5);
    const Vec mu(40, 0.0);
    CHECK_THROWS_WITH_AS(appendixA2_bound(mu, standard_basis_design(40, 2), 1.0, 0.2, 1.0),
                         doctest::Contains("p >= 3"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(appendixA2_bound(mu, d, 1.0, 0.5, 1.0),
                         doctest::Contains("0 < beta < 1/2"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(appendixA2_bound(mu, d, 1.0, 0.2, 0.5),
                         doctest::Contains("b >= 1"), std::invalid_argument);
    // 0.49 is close enough to 1/2 that log(p)/phi(2 beta) blows past n = 40
    CHECK_THROWS_WITH_AS(appendixA2_bound(mu, d, 1.0, 0.49999, 1.0),
                         doctest::Contains("phi(2 beta)"), std::invalid_argument);
}

TEST_CASE("chi-square deviation and tail bounds") {
    // N=10, a=0.5: 0.5 e^{-10 phi(0.5)}
    CHECK(chi2_deviation_bound(10, 0.5) == doctest::Approx(0.19035146813599177).epsilon(1e-13));
    CHECK(chi2_lower_tail_bound(10, 2.0) ==
          doctest::Approx(0.38070293627198354).epsilon(1e-13));
    // blows up as a -> 1
    CHECK(chi2_deviation_bound(10, 0.999999) > 1e4);
    CHECK_THROWS(chi2_deviation_bound(2, 0.5));
    CHECK_THROWS(chi2_deviation_bound(10, 1.0));
    CHECK_THROWS(chi2_lower_tail_bound(10, 1.0));
}
