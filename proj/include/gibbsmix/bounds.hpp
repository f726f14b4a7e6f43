#ifndef GIBBSMIX_BOUNDS_HPP
#define GIBBSMIX_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gibbsmix/core.hpp"
#include "gibbsmix/tuning.hpp"

namespace gibbsmix {

// E||mu - mu_hat_m||^2 = ||mu - Pi_m mu||^2 + dim(S_m) sigma^2.
inline double model_risk(const Vec& mu, std::size_t model_index,
                         const ModelCollection& c, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("model_risk: sigma2 must be > 0");
    const Vec pm = project(mu, model_index, c);
    double bias = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double d = mu[i] - pm[i];
        bias += d * d;
    }
    return bias + c.model_rank(model_index) * sigma2;
}

struct BoundReport {
    std::vector<double> per_model_risk;
    double foracle_rhs = 0.0;
    double fgibbs_rhs = 0.0;
    double crude_rhs = 0.0;  // bias-complexity corollary of the oracle bound
    double epsilon_n = 0.0;
    double sigma_bar2 = 0.0;
    double complexity_sup = 0.0;  // sup_m C_m = L_m - log pi_m
    std::size_t best_model = 0;
};

// Right-hand sides of the two chained risk bounds for a given truth mu.
// L_m is taken as dim(S_m)/2 unless use_model_l is set.
inline BoundReport theorem1_bounds(const Vec& mu, const ModelCollection& c,
                                   double sigma2, double beta,
                                   bool use_model_l = false) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("theorem1_bounds: sigma2 must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("theorem1_bounds: beta must be > 0");

    const int n = c.n();
    const int n_star = n - c.d_star();
    const Vec mu_star = project_star(mu, c);
    double bias_star = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double d = mu[i] - mu_star[i];
        bias_star += d * d;
    }

    BoundReport r;
    r.epsilon_n = 1.0 / (2.0 * n * std::log(static_cast<double>(n)));
    r.sigma_bar2 = sigma2 + bias_star / n_star;

    const std::size_t nm = c.models.size();
    r.per_model_risk.resize(nm);
    std::vector<double> log_terms(nm);
    double best_oracle = std::numeric_limits<double>::infinity();
    double best_crude = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < nm; ++m) {
        const Vec pm = project(mu, m, c);
        double bias = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            const double d = mu[i] - pm[i];
            bias += d * d;
        }
        const double dim = c.model_rank(m);
        r.per_model_risk[m] = bias + dim * sigma2;
        const double l_m = use_model_l ? c.models[m].weight_L : 0.5 * dim;
        const double c_m = l_m - std::log(c.models[m].prior);
        r.complexity_sup = std::max(r.complexity_sup, c_m);
        const double oracle_term = bias + (r.sigma_bar2 / beta) * c_m;
        if (oracle_term < best_oracle) {
            best_oracle = oracle_term;
            r.best_model = m;
        }
        best_crude = std::min(best_crude, bias + c_m * sigma2 / beta);
        log_terms[m] = std::log(c.models[m].prior) -
                       beta * (bias - dim * sigma2) / r.sigma_bar2 - l_m;
    }

    double max_lt = -std::numeric_limits<double>::infinity();
    for (double lt : log_terms) max_lt = std::max(max_lt, lt);
    double z = 0.0;
    for (double lt : log_terms) z += std::exp(lt - max_lt);
    const double log_sum = max_lt + std::log(z);

    const double tail = sigma2 / (2.0 * std::log(static_cast<double>(n)));
    r.foracle_rhs = (1.0 + r.epsilon_n) * best_oracle + tail;
    r.fgibbs_rhs = -(1.0 + r.epsilon_n) * (r.sigma_bar2 / beta) * log_sum + tail;

    const double r_star =
        1.0 / (2.0 * std::log(static_cast<double>(n))) +
        bias_star / (beta * n_star * sigma2) * r.complexity_sup;
    r.crude_rhs = (1.0 + r.epsilon_n) * best_crude + r_star * sigma2;
    return r;
}

// gamma_beta(p) = sqrt(2 + log(p)/beta).
inline double gamma_beta(int p, double beta) {
    if (p < 1) throw std::invalid_argument("gamma_beta: p must be >= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("gamma_beta: beta must be > 0");
    return std::sqrt(2.0 + std::log(static_cast<double>(p)) / beta);
}

namespace detail {

// s_beta(z) = e^{beta z^2} / (p e^{2 beta} + e^{beta z^2}) as a stable logistic.
inline double s_beta(double z, double beta, double log_p) {
    const double t = log_p + 2.0 * beta - beta * z * z;
    if (t >= 0.0) {
        const double e = std::exp(-t);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(t));
}

// E[(x - (x+Z) s_beta(x+Z))^2], Z standard Gaussian, by composite Simpson on
// [-12, 12] (tail mass < 1e-31).
inline double shrink_risk_integral(double x, double beta, double log_p, int panels) {
    const double lo = -12.0;
    const double hi = 12.0;
    const double h = (hi - lo) / panels;
    const double inv_sqrt_2pi = 0.3989422804014326779;
    double acc = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double z = lo + i * h;
        const double t = x - (x + z) * s_beta(x + z, beta, log_p);
        const double val = t * t * std::exp(-0.5 * z * z) * inv_sqrt_2pi;
        const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * val;
    }
    return acc * h / 3.0;
}

}  // namespace detail

struct CBetaOptions {
    int z_panels = 24000;   // Simpson panels over [-12,12], step 1e-3
    int x_grid = 512;       // coarse scan points over [0, 4 gamma]
    double x_tol = 1e-6;    // golden-section tolerance
};

// c_beta(p): sup over x in [0, 4 gamma] of the shrinkage risk ratio, floored
// at 0.6. Coarse scan then golden-section refinement around the best bracket.
inline double c_beta(int p, double beta, const CBetaOptions& opt = {}) {
    if (p < 3) throw std::invalid_argument("c_beta: p must be >= 3");
    if (!(beta > 0.0)) throw std::invalid_argument("c_beta: beta must be > 0");
    const double log_p = std::log(static_cast<double>(p));
    const double gamma = gamma_beta(p, beta);
    const double gamma2 = gamma * gamma;
    const double x_max = 4.0 * gamma;

    auto ratio = [&](double x) {
        const double num = detail::shrink_risk_integral(x, beta, log_p, opt.z_panels);
        const double den = std::min(x * x, gamma2) + gamma2 / p;
        return num / den;
    };

    double best = -1.0;
    int best_i = 0;
    std::vector<double> vals(static_cast<std::size_t>(opt.x_grid) + 1);
    for (int i = 0; i <= opt.x_grid; ++i) {
        const double x = x_max * i / opt.x_grid;
        vals[static_cast<std::size_t>(i)] = ratio(x);
        if (vals[static_cast<std::size_t>(i)] > best) {
            best = vals[static_cast<std::size_t>(i)];
            best_i = i;
        }
    }
    // golden-section maximization on the bracketing interval
    double a = x_max * std::max(0, best_i - 1) / opt.x_grid;
    double b = x_max * std::min(opt.x_grid, best_i + 1) / opt.x_grid;
    const double gr = 0.6180339887498948482;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = ratio(x1);
    double f2 = ratio(x2);
    while (b - a > opt.x_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = ratio(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = ratio(x1);
        }
    }
    best = std::max(best, std::max(f1, f2));
    return std::max(best, 0.6);
}

// Known-variance bound for orthonormal-subset collections:
// ||mu - Pi_* mu||^2 + c_beta(p) inf_m [||Pi_* mu - Pi_m mu||^2
//                                        + (2 + log(p)/beta)(|m|+1) sigma^2].
// The infimum is taken coordinatewise over all 2^p subsets.
inline double prop2_bound(const Vec& mu, const DesignFamily& design, double sigma2,
                          double beta, const CBetaOptions& opt = {}) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("prop2_bound: sigma2 must be > 0");
    const int p = design.p();
    if (gram_check(design) > 1e-8) {
        throw std::invalid_argument("prop2_bound: design must be orthonormal");
    }
    const double gamma2 = 2.0 + std::log(static_cast<double>(p)) / beta;
    double bias_star = norm2(mu, design.ip);
    double inf_term = gamma2 * sigma2;  // the (|m|+1) floor at m = empty
    for (int j = 0; j < p; ++j) {
        const double coef = dot(mu, design.columns[static_cast<std::size_t>(j)], design.ip);
        bias_star -= coef * coef;
        inf_term += std::min(coef * coef, gamma2 * sigma2);
    }
    bias_star = std::max(bias_star, 0.0);
    return bias_star + c_beta(p, beta, opt) * inf_term;
}

// Appendix unknown-variance bound:
// 16 inf_m [||mu - mu_m||^2 + (b + log p)(|m|+1) sigma_bar^2 / beta
//           + (2 + b + log p) sigma^2]
// valid under p >= 3, 0 < beta < 1/2, p + log(p)/phi(2 beta) <= n, b >= 1.
inline double appendixA2_bound(const Vec& mu, const DesignFamily& design, double sigma2,
                               double beta, double b) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("appendixA2: sigma2 must be > 0");
    const int p = design.p();
    const int n = design.n();
    if (p < 3) throw std::invalid_argument("appendixA2: condition p >= 3 violated");
    if (!(beta > 0.0 && beta < 0.5)) {
        throw std::invalid_argument("appendixA2: condition 0 < beta < 1/2 violated");
    }
    if (p + std::log(static_cast<double>(p)) / phi(2.0 * beta) > static_cast<double>(n)) {
        throw std::invalid_argument("appendixA2: condition p + log(p)/phi(2 beta) <= n violated");
    }
    if (b < 1.0) throw std::invalid_argument("appendixA2: condition b >= 1 violated");
    if (gram_check(design) > 1e-8) {
        throw std::invalid_argument("appendixA2: design must be orthonormal");
    }

    double bias_star = norm2(mu, design.ip);
    std::vector<double> coef2(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        const double coef = dot(mu, design.columns[static_cast<std::size_t>(j)], design.ip);
        coef2[static_cast<std::size_t>(j)] = coef * coef;
        bias_star -= coef * coef;
    }
    bias_star = std::max(bias_star, 0.0);
    const double sigma_bar2 = sigma2 + bias_star / (n - p);
    const double penalty = (b + std::log(static_cast<double>(p))) * sigma_bar2 / beta;
    // coordinatewise infimum: include coordinate j iff coef_j^2 > penalty
    double inf_term = bias_star + penalty + (2.0 + b + std::log(static_cast<double>(p))) * sigma2;
    for (double c2 : coef2) inf_term += std::min(c2, penalty);
    return 16.0 * inf_term;
}

// Deviation bound 2/((1-a)(N-2)) exp(-N phi(a)) dominating
// E[(a/X - 1)_+] for N X ~ chi^2(N).
inline double chi2_deviation_bound(int n_dof, double a) {
    if (n_dof <= 2) throw std::invalid_argument("chi2_deviation_bound: N must be > 2");
    if (!(a > 0.0 && a < 1.0)) {
        throw std::invalid_argument("chi2_deviation_bound: a must lie in (0,1)");
    }
    return 2.0 / ((1.0 - a) * (n_dof - 2)) * std::exp(-n_dof * phi(a));
}

// Tail bound from the same lemma: P(X <= 1/t) <= exp(-N phi(1/t)), t > 1.
inline double chi2_lower_tail_bound(int n_dof, double t) {
    if (n_dof <= 0) throw std::invalid_argument("chi2_lower_tail_bound: N must be > 0");
    if (!(t > 1.0)) throw std::invalid_argument("chi2_lower_tail_bound: t must be > 1");
    return std::exp(-n_dof * phi(1.0 / t));
}

}  // namespace gibbsmix

#endif  // GIBBSMIX_BOUNDS_HPP
