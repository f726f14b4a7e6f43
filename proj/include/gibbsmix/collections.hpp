#ifndef GIBBSMIX_COLLECTIONS_HPP
#define GIBBSMIX_COLLECTIONS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gibbsmix/core.hpp"
#include "gibbsmix/mixer.hpp"
#include "gibbsmix/shrinkage.hpp"

namespace gibbsmix {

namespace detail {

inline std::string subset_id(const std::vector<int>& idx) {
    std::string s = "m{";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i > 0) s += ',';
        s += std::to_string(idx[i] + 1);
    }
    return s + "}";
}

inline double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace detail

// Nested collection S_0 subset ... subset S_p on the first m columns, with
// geometric priors pi_m ~ e^{-alpha m} and L_m = m/2.
inline ModelCollection ordered_linear(DesignFamily design, double alpha) {
    validate_design(design);
    if (!(alpha > 0.0)) throw std::invalid_argument("ordered_linear: alpha must be > 0");
    const int p = design.p();
    if (p >= design.n()) throw std::invalid_argument("ordered_linear: need p < n");

    const double norm = (std::exp(alpha) - 1.0) / (std::exp(alpha) - std::exp(-alpha * p));
    std::vector<Model> models;
    models.reserve(p + 1);
    std::vector<int> star;
    for (int m = 0; m <= p; ++m) {
        Model mod;
        mod.id = "S" + std::to_string(m);
        for (int j = 0; j < m; ++j) mod.column_indices.push_back(j);
        mod.prior = norm * std::exp(-alpha * m);
        mod.weight_L = 0.5 * m;
        models.push_back(std::move(mod));
    }
    for (int j = 0; j < p; ++j) star.push_back(j);
    return make_collection(std::move(design), std::move(models), std::move(star));
}

// All subsets of size <= q with pi_m = [C(p,|m|)(|m|+1) H_q]^{-1}, L_m = |m|/2.
inline ModelCollection unordered_linear(DesignFamily design, int q) {
    validate_design(design);
    const int p = design.p();
    if (q < 0 || q > p) throw std::invalid_argument("unordered_linear: need 0 <= q <= p");
    if (p >= design.n()) throw std::invalid_argument("unordered_linear: need p < n");

    double count = 0.0;
    for (int d = 0; d <= q; ++d) count += std::exp(detail::log_binomial(p, d));
    if (count > 1e6) {
        throw std::invalid_argument("unordered_linear: enumeration too large (" +
                                    std::to_string(static_cast<std::uint64_t>(count)) +
                                    " models)");
    }

    double h_q = 0.0;
    for (int d = 0; d <= q; ++d) h_q += 1.0 / (d + 1.0);

    std::vector<Model> models;
    std::vector<int> current;
    auto emit = [&](const std::vector<int>& idx) {
        Model mod;
        mod.id = detail::subset_id(idx);
        mod.column_indices = idx;
        const int d = static_cast<int>(idx.size());
        mod.prior = std::exp(-detail::log_binomial(p, d)) / ((d + 1.0) * h_q);
        mod.weight_L = 0.5 * d;
        models.push_back(std::move(mod));
    };
    // enumerate subsets of {0..p-1} of size <= q in lexicographic order
    auto recurse = [&](auto&& self, int start) -> void {
        emit(current);
        if (static_cast<int>(current.size()) == q) return;
        for (int j = start; j < p; ++j) {
            current.push_back(j);
            self(self, j + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 0);

    std::vector<int> star;
    for (int j = 0; j < p; ++j) star.push_back(j);
    return make_collection(std::move(design), std::move(models), std::move(star));
}

// All 2^p subsets of an orthonormal design with pi_m = (1+p^-alpha)^{-p} p^{-alpha|m|}
// and L_m = b |m|. This is the family whose mixture collapses to the
// coordinatewise shrinker.
inline ModelCollection all_subsets(DesignFamily design, double alpha, double b) {
    validate_design(design);
    const int p = design.p();
    if (!(alpha > 0.0)) throw std::invalid_argument("all_subsets: alpha must be > 0");
    if (b < 0.0) throw std::invalid_argument("all_subsets: b must be >= 0");
    if (p >= design.n()) throw std::invalid_argument("all_subsets: need p < n");
    if (p > 20) throw std::invalid_argument("all_subsets: p too large to enumerate");

    const double log_pa = alpha * std::log(static_cast<double>(p));
    const double log_norm = -p * std::log1p(std::exp(-log_pa));
    std::vector<Model> models;
    models.reserve(std::size_t{1} << p);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << p); ++mask) {
        Model mod;
        for (int j = 0; j < p; ++j) {
            if (mask & (std::uint32_t{1} << j)) mod.column_indices.push_back(j);
        }
        const double d = static_cast<double>(mod.column_indices.size());
        mod.id = detail::subset_id(mod.column_indices);
        mod.prior = std::exp(log_norm - d * log_pa);
        mod.weight_L = b * d;
        models.push_back(std::move(mod));
    }
    std::vector<int> star;
    for (int j = 0; j < p; ++j) star.push_back(j);
    return make_collection(std::move(design), std::move(models), std::move(star));
}

// --- Haar family on the dyadic grid -----------------------------------------

// One Haar vector v_{j,k} of length n = 2^{J_n}, 0 <= j <= J_n. v_{0,0} is the
// all-ones vector; for j >= 1 the entry scale is 2^{(j-1)/2} with sign -1 on
// I^- = {1+2k 2^{-j}n, ..., (2k+1) 2^{-j}n} and +1 on the following block.
inline Vec haar_vector(int n, int j, int k) {
    if (n < 2 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("haar_vector: n must be a power of two");
    }
    if (j == 0) {
        if (k != 0) throw std::invalid_argument("haar_vector: j=0 requires k=0");
        return Vec(static_cast<std::size_t>(n), 1.0);
    }
    const int block = n >> j;  // 2^{-j} n
    if (block < 1) throw std::invalid_argument("haar_vector: level too fine");
    if (k < 0 || k >= (1 << (j - 1))) throw std::invalid_argument("haar_vector: k out of range");
    Vec v(static_cast<std::size_t>(n), 0.0);
    const double scale = std::pow(2.0, (j - 1) / 2.0);
    const int lo_minus = 2 * k * block;  // 0-based start of I^-
    for (int i = 0; i < block; ++i) {
        v[static_cast<std::size_t>(lo_minus + i)] = -scale;
        v[static_cast<std::size_t>(lo_minus + block + i)] = scale;
    }
    return v;
}

// The n/2 vectors indexed by Lambda^* = {(0,0)} u {(j,k): 1<=j<=J_n-1}.
// Orthonormal under <.,.>_n.
struct HaarFamily {
    int n = 0;
    int j_star = 0;  // J_n - 1
    std::vector<std::pair<int, int>> index;  // (j,k) in enumeration order
    DesignFamily design;                     // columns in the same order
};

inline HaarFamily haar_family(int n) {
    if (n < 8 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("haar_family: n must be a power of two >= 8");
    }
    int jn = 0;
    while ((1 << jn) < n) ++jn;
    HaarFamily f;
    f.n = n;
    f.j_star = jn - 1;
    f.design.ip = InnerProduct::normalized;
    f.index.emplace_back(0, 0);
    f.design.columns.push_back(haar_vector(n, 0, 0));
    for (int j = 1; j <= f.j_star; ++j) {
        for (int k = 0; k < (1 << (j - 1)); ++k) {
            f.index.emplace_back(j, k);
            f.design.columns.push_back(haar_vector(n, j, k));
        }
    }
    return f;
}

struct HaarEstimate {
    ShrinkResult shrink;   // coefficients in Lambda^* order
    double sigma2_hat = 0.0;
    Vec mu_hat;            // reconstructed estimate of mu
};

// The closed-form estimator on the Haar family: coefficients
// Z exp(n beta Z^2/sigma2_hat) / (e n/2 + exp(n beta Z^2/sigma2_hat)) with
// Z_{j,k} = <Y, v_{j,k}>_n and sigma2_hat = 2(<Y,Y>_n - sum Z^2).
inline HaarEstimate haar_estimator(const Vec& y, double beta) {
    const int n = static_cast<int>(y.size());
    const HaarFamily fam = haar_family(n);
    if (!(beta > 0.0)) throw std::invalid_argument("haar_estimator: beta must be > 0");

    const std::size_t p = fam.design.columns.size();  // n/2
    std::vector<double> z(p);
    double sum_z2 = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        z[j] = dot(y, fam.design.columns[j], InnerProduct::normalized);
        sum_z2 += z[j] * z[j];
    }
    HaarEstimate est;
    est.sigma2_hat = 2.0 * (norm2(y, InnerProduct::normalized) - sum_z2);
    if (est.sigma2_hat <= 0.0) {
        throw std::runtime_error("haar_estimator: degenerate residual");
    }
    // Equivalent to shrink_unknown_variance with p = n/2, alpha = 1, b = 1
    // after rescaling Z by sqrt(n): the exponent is n beta Z^2 / sigma2_hat.
    est.shrink.z = z;
    const double log_thresh = std::log(static_cast<double>(n) / 2.0) + 1.0;
    est.shrink.coefficients.reserve(p);
    est.shrink.shrunk.reserve(p);
    est.mu_hat.assign(y.size(), 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        const double c =
            detail::logistic_neg(log_thresh - n * beta * z[j] * z[j] / est.sigma2_hat);
        est.shrink.coefficients.push_back(c);
        est.shrink.shrunk.push_back(c * z[j]);
        for (std::size_t i = 0; i < y.size(); ++i) {
            est.mu_hat[i] += c * z[j] * fam.design.columns[j][i];
        }
    }
    return est;
}

// --- Besov collection descriptors --------------------------------------------

// Per-level summary of the wavelet-compression family M_J. The members are
// never enumerated; |M_J| is astronomically large.
struct BesovDescriptor {
    int j_level = 0;         // J
    double dim_bound = 0.0;  // sum_{j<J} 2^j + sum_{j>=J} floor(2^J/(j-J+1)^3)
    double weight_l = 0.0;   // L_m = 1.1 * 2^J
    double log_pi = 0.0;     // log pi_m for m in M_J (uniform within M_J)
    double cardinality_log = 0.0;  // log |M_J|
};

inline int besov_j_star(double kappa, int n) {
    if (!(kappa > 0.0 && kappa < 1.0)) {
        throw std::invalid_argument("besov: kappa must lie in (0,1)");
    }
    if (n < 8) throw std::invalid_argument("besov: n too small");
    return static_cast<int>(std::floor(std::log(kappa * n / 2.0) / std::log(2.0)));
}

inline std::vector<BesovDescriptor> besov_descriptors(double kappa, int n) {
    const int j_star = besov_j_star(kappa, n);
    if (j_star < 1) throw std::invalid_argument("besov: J_* < 1");

    // Normalize the priors over J = 1..J_*: pi_m = [2^J Z prod_j C(2^j, k_j)]^{-1}
    // with Z = sum_J 2^{-J} = 1 - 2^{-J_*}, so that sum over all m is one.
    const double log_z = std::log1p(-std::pow(2.0, -j_star));

    std::vector<BesovDescriptor> out;
    out.reserve(static_cast<std::size_t>(j_star));
    for (int j_level = 1; j_level <= j_star; ++j_level) {
        BesovDescriptor d;
        d.j_level = j_level;
        d.weight_l = 1.1 * std::pow(2.0, j_level);
        double dim = 0.0;
        for (int j = 0; j < j_level; ++j) dim += std::pow(2.0, j);
        double log_card = 0.0;
        for (int j = j_level; j <= j_star; ++j) {
            const double kj =
                std::floor(std::pow(2.0, j_level) / std::pow(j - j_level + 1.0, 3.0));
            dim += kj;
            log_card += detail::log_binomial(std::pow(2.0, j), kj);
        }
        d.dim_bound = dim;
        d.cardinality_log = log_card;
        d.log_pi = -(j_level * std::log(2.0) + log_z + log_card);
        out.push_back(d);
    }
    return out;
}

// --- Trigonometric design on the unit grid -----------------------------------

// The 41-column trigonometric design on x_i = i/n: sines j=1..20, the
// constant column at j=21, cosines j=22..41. Orthonormal (euclidean) for
// n >= 42.
inline DesignFamily fourier_design(int n = 60) {
    if (n < 42) throw std::invalid_argument("fourier_design: n must be >= 42");
    DesignFamily d;
    d.ip = InnerProduct::euclidean;
    const double two_pi = 2.0 * std::acos(-1.0);
    const double s2 = std::sqrt(2.0 / n);
    const double s1 = std::sqrt(1.0 / n);
    for (int j = 1; j <= 20; ++j) {
        Vec col(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            col[static_cast<std::size_t>(i - 1)] = s2 * std::sin(two_pi * j * i / n);
        }
        d.columns.push_back(std::move(col));
    }
    d.columns.push_back(Vec(static_cast<std::size_t>(n), s1));
    for (int j = 22; j <= 41; ++j) {
        Vec col(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            col[static_cast<std::size_t>(i - 1)] = s2 * std::cos(two_pi * (j - 21) * i / n);
        }
        d.columns.push_back(std::move(col));
    }
    return d;
}

}  // namespace gibbsmix

#endif  // GIBBSMIX_COLLECTIONS_HPP
