#ifndef GIBBSMIX_SHRINKAGE_HPP
#define GIBBSMIX_SHRINKAGE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gibbsmix/core.hpp"

namespace gibbsmix {

struct ShrinkResult {
    std::vector<double> coefficients;  // c_j in (0,1)
    std::vector<double> shrunk;        // c_j * Z_j
    std::vector<double> z;             // the input coordinates
};

namespace detail {

// 1 / (1 + exp(t)), safe for any t. Clamped to the open interval: for
// |t| beyond ~37 the quotient would round to an endpoint.
inline double logistic_neg(double t) {
    double c;
    if (t >= 0.0) {
        const double e = std::exp(-t);
        c = e / (1.0 + e);
    } else {
        c = 1.0 / (1.0 + std::exp(t));
    }
    c = std::min(c, 1.0 - std::numeric_limits<double>::epsilon() / 2.0);
    return std::max(c, std::numeric_limits<double>::min());
}

inline ShrinkResult shrink_with_log_threshold(const std::vector<double>& z,
                                              double sigma2, double beta,
                                              double log_threshold) {
    ShrinkResult r;
    r.z = z;
    r.coefficients.reserve(z.size());
    r.shrunk.reserve(z.size());
    for (double zj : z) {
        const double c = logistic_neg(log_threshold - beta * zj * zj / sigma2);
        r.coefficients.push_back(c);
        r.shrunk.push_back(c * zj);
    }
    return r;
}

}  // namespace detail

// c_j = exp(beta Z_j^2/sigma2_hat) / (p^alpha e^b + exp(beta Z_j^2/sigma2_hat)),
// evaluated as a logistic in the log domain.
inline ShrinkResult shrink_unknown_variance(const std::vector<double>& z,
                                            double sigma2_hat, double beta,
                                            double alpha, double b) {
    if (!(sigma2_hat > 0.0)) throw std::invalid_argument("shrink: sigma2_hat must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("shrink: beta must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("shrink: alpha must be > 0");
    if (b < 0.0) throw std::invalid_argument("shrink: b must be >= 0");
    if (z.empty()) throw std::invalid_argument("shrink: empty input");
    const double log_thresh = alpha * std::log(static_cast<double>(z.size())) + b;
    return detail::shrink_with_log_threshold(z, sigma2_hat, beta, log_thresh);
}

// Known-variance variant: c_j = exp(beta Z_j^2/sigma2)/(p^alpha e^{2 beta} + exp(...)).
// With alpha = 1 this is s_beta(Z_j/sigma).
inline ShrinkResult shrink_known_variance(const std::vector<double>& z, double sigma2,
                                          double beta, double alpha) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("shrink: sigma2 must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("shrink: beta must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("shrink: alpha must be > 0");
    if (z.empty()) throw std::invalid_argument("shrink: empty input");
    const double log_thresh = alpha * std::log(static_cast<double>(z.size())) + 2.0 * beta;
    return detail::shrink_with_log_threshold(z, sigma2, beta, log_thresh);
}

namespace detail {

// Simpson rule for a family of integrands evaluated together on [0,1].
// eval(q, out) fills out[0..k-1]; panels doubled until every component is
// within rel_tol or the cap is hit.
template <typename F>
inline std::vector<double> simpson_family(F eval, std::size_t k, double rel_tol,
                                          int max_panels) {
    auto integrate = [&](int panels) {
        const double h = 1.0 / panels;
        std::vector<double> acc(k, 0.0), tmp(k);
        for (int i = 0; i <= panels; ++i) {
            const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            eval(i * h, tmp);
            for (std::size_t j = 0; j < k; ++j) acc[j] += w * tmp[j];
        }
        for (std::size_t j = 0; j < k; ++j) acc[j] *= h / 3.0;
        return acc;
    };
    int panels = 64;
    std::vector<double> prev = integrate(panels);
    while (panels < max_panels) {
        panels *= 2;
        std::vector<double> cur = integrate(panels);
        bool converged = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (std::abs(cur[j] - prev[j]) > rel_tol * std::abs(cur[j])) {
                converged = false;
                break;
            }
        }
        prev = std::move(cur);
        if (converged) break;
    }
    return prev;
}

}  // namespace detail

// Binomial-prior coefficients: pi_m = [(p+1) C(p,|m|)]^{-1} gives
//   c_j = Int q prod_{k != j} [q + (1-q) g_k] dq / Int prod_k [q + (1-q) g_k] dq
// with g_k = exp(b - beta Z_k^2/sigma2_hat). Products go through logs.
inline ShrinkResult shrink_binomial_prior(const std::vector<double>& z, double sigma2_hat,
                                          double beta, double b) {
    if (!(sigma2_hat > 0.0)) throw std::invalid_argument("shrink: sigma2_hat must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("shrink: beta must be > 0");
    if (b < 0.0) throw std::invalid_argument("shrink: b must be >= 0");
    if (z.empty()) throw std::invalid_argument("shrink: empty input");

    const std::size_t p = z.size();
    std::vector<double> g(p);
    for (std::size_t k = 0; k < p; ++k) {
        g[k] = std::exp(b - beta * z[k] * z[k] / sigma2_hat);
    }

    // out[0] = denominator integrand, out[1+j] = numerator integrand for j.
    auto eval = [&](double q, std::vector<double>& out) {
        double log_prod = 0.0;
        std::vector<double> log_factor(p);
        for (std::size_t k = 0; k < p; ++k) {
            log_factor[k] = std::log(q + (1.0 - q) * g[k]);
            log_prod += log_factor[k];
        }
        out[0] = std::exp(log_prod);
        for (std::size_t j = 0; j < p; ++j) {
            out[1 + j] = q * std::exp(log_prod - log_factor[j]);
        }
    };
    const std::vector<double> ints =
        detail::simpson_family(eval, p + 1, 1e-9, 1 << 14);

    ShrinkResult r;
    r.z = z;
    r.coefficients.reserve(p);
    r.shrunk.reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
        const double c = ints[1 + j] / ints[0];
        r.coefficients.push_back(c);
        r.shrunk.push_back(c * z[j]);
    }
    return r;
}

}  // namespace gibbsmix

#endif  // GIBBSMIX_SHRINKAGE_HPP
