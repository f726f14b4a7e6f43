#ifndef GIBBSMIX_TUNING_HPP
#define GIBBSMIX_TUNING_HPP

#include <cmath>
#include <stdexcept>

namespace gibbsmix {

// phi(x) = (x - 1 - log x)/2, strictly decreasing on (0,1).
inline double phi(double x) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::domain_error("phi: x must lie in (0,1)");
    }
    return (x - 1.0 - std::log(x)) / 2.0;
}

// Unique x in (0,1] with phi(x) = y, by bisection. phi diverges at 0+ so
// every y >= 0 is bracketed by [1e-15, 1].
inline double phi_inverse(double y) {
    if (y < 0.0) {
        throw std::domain_error("phi_inverse: y must be >= 0");
    }
    if (y == 0.0) return 1.0;
    // phi(x) ~ -log(x)/2 near 0, so exp(-2y-2) brackets from below for any y;
    // converge in relative terms since the root may be arbitrarily small
    double lo = std::exp(-2.0 * y - 2.0);
    double hi = 1.0;
    for (int it = 0; it < 500 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((mid - 1.0 - std::log(mid)) / 2.0 > y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

enum class BetaRule { theorem1, orthonormal_appendix, user };

struct TuningReport {
    double beta = 0.0;
    BetaRule beta_rule = BetaRule::user;
    bool conditions_ok = false;
    double phi_value = 0.0;
};

// true iff beta < 1/4 and N_* >= 2 + log(n)/phi(4 beta).
inline bool check_theorem1_conditions(double beta, int n_star, int n) {
    if (!(beta > 0.0) || beta >= 0.25) return false;
    return static_cast<double>(n_star) >= 2.0 + std::log(static_cast<double>(n)) / phi(4.0 * beta);
}

// Largest beta meeting the Theorem 1 condition: (1/4) phi^{-1}(log n / (N_*-2)).
inline double beta_max_theorem1(int n, int n_star) {
    if (n < 3) throw std::domain_error("beta_max_theorem1: n must be >= 3");
    if (n_star <= 2) throw std::domain_error("beta_max_theorem1: N_* must be > 2");
    double beta = 0.25 * phi_inverse(std::log(static_cast<double>(n)) / (n_star - 2.0));
    // the bisection lands on the boundary; back off geometrically until the
    // (exact) condition check accepts the value
    double step = beta * 1e-14;
    while (!check_theorem1_conditions(beta, n_star, n) && step < beta) {
        beta -= step;
        step *= 2.0;
    }
    return beta;
}

enum class OrthoBetaRule { remark4, appendixA2 };

// Admissible beta for the orthonormal unknown-variance shrinker.
//   remark4:    (1/2) phi^{-1}(log p / (n - p))
//   appendixA2: largest beta < 1/2 with p + log(p)/phi(2 beta) <= n
inline double beta_max_orthonormal(int n, int p, OrthoBetaRule rule) {
    if (p < 3) throw std::domain_error("beta_max_orthonormal: p must be >= 3");
    if (n <= p) throw std::domain_error("beta_max_orthonormal: n must exceed p");
    const double logp = std::log(static_cast<double>(p));
    if (rule == OrthoBetaRule::remark4) {
        return 0.5 * phi_inverse(logp / (n - p));
    }
    // p + log(p)/phi(2 beta) is increasing in beta; bisect on (0, 1/2).
    double lo = 1e-15;
    double hi = 0.5 - 1e-15;
    if (p + logp / phi(2.0 * lo) > n) {
        throw std::domain_error("beta_max_orthonormal: condition unattainable");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (p + logp / phi(2.0 * mid) <= static_cast<double>(n)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

// true iff p >= 3, 0 < beta < 1/2 and p + log(p)/phi(2 beta) <= n.
inline bool check_orthonormal_conditions(double beta, int p, int n) {
    if (p < 3 || !(beta > 0.0) || beta >= 0.5) return false;
    return p + std::log(static_cast<double>(p)) / phi(2.0 * beta) <= static_cast<double>(n);
}

inline TuningReport tune_theorem1(int n, int n_star) {
    TuningReport r;
    r.beta = beta_max_theorem1(n, n_star);
    r.beta_rule = BetaRule::theorem1;
    r.phi_value = phi(4.0 * r.beta);
    r.conditions_ok = check_theorem1_conditions(r.beta, n_star, n);
    return r;
}

// A user-supplied beta is accepted even when the checks fail; the report
// just records conditions_ok = false.
inline TuningReport tune_user(double beta, int n, int n_star) {
    if (!(beta > 0.0)) throw std::domain_error("tune_user: beta must be > 0");
    TuningReport r;
    r.beta = beta;
    r.beta_rule = BetaRule::user;
    r.phi_value = (beta < 0.25) ? phi(4.0 * beta) : 0.0;
    r.conditions_ok = check_theorem1_conditions(beta, n_star, n);
    return r;
}

}  // namespace gibbsmix

#endif  // GIBBSMIX_TUNING_HPP
