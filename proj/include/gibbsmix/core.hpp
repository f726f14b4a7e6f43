#ifndef GIBBSMIX_CORE_HPP
#define GIBBSMIX_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gibbsmix {

using Vec = std::vector<double>;

// Inner product convention carried by a design. "normalized" is
// <x,y>_n = (1/n) sum x_i y_i, used for the sampled-function bases.
enum class InnerProduct { euclidean, normalized };

inline double dot(const Vec& x, const Vec& y, InnerProduct ip) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("dot: length mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * y[i];
    }
    return ip == InnerProduct::normalized ? s / static_cast<double>(x.size()) : s;
}

inline double norm2(const Vec& x, InnerProduct ip) { return dot(x, x, ip); }

// Ordered family of candidate basis columns, p columns of length n.
struct DesignFamily {
    std::vector<Vec> columns;
    InnerProduct ip = InnerProduct::euclidean;

    int n() const { return columns.empty() ? 0 : static_cast<int>(columns[0].size()); }
    int p() const { return static_cast<int>(columns.size()); }
};

inline void validate_design(const DesignFamily& design) {
    if (design.columns.empty()) {
        throw std::invalid_argument("design: no columns");
    }
    const std::size_t n = design.columns[0].size();
    if (n < 3) {
        throw std::invalid_argument("design: n must be >= 3");
    }
    for (const Vec& c : design.columns) {
        if (c.size() != n) {
            throw std::invalid_argument("design: columns of unequal length");
        }
        for (double v : c) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("design: non-finite entry");
            }
        }
    }
}

// Max |G_ij - delta_ij| of the Gram matrix under the declared inner product.
inline double gram_check(const DesignFamily& design) {
    validate_design(design);
    const int p = design.p();
    double dev = 0.0;
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            const double g = dot(design.columns[i], design.columns[j], design.ip);
            dev = std::max(dev, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return dev;
}

// One candidate model: a subset of design columns with prior mass and weight.
struct Model {
    std::string id;
    std::vector<int> column_indices;  // 0-based, sorted, duplicate-free
    double prior = 0.0;               // pi_m
    double weight_L = 0.0;            // L_m
};

namespace detail {

// Modified Gram-Schmidt with one reorthogonalization pass. Columns whose
// residual norm falls below tol (relative) are dropped, which degrades the
// projection to the pseudo-inverse one on rank-deficient selections.
inline std::vector<Vec> orthonormal_basis(const DesignFamily& design,
                                          const std::vector<int>& indices,
                                          bool* rank_deficient) {
    std::vector<Vec> basis;
    basis.reserve(indices.size());
    for (int idx : indices) {
        if (idx < 0 || idx >= design.p()) {
            throw std::invalid_argument("model column index out of range");
        }
        Vec v = design.columns[static_cast<std::size_t>(idx)];
        const double orig = std::sqrt(norm2(v, design.ip));
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& q : basis) {
                const double c = dot(v, q, design.ip);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
            }
        }
        const double r = std::sqrt(norm2(v, design.ip));
        if (r <= 1e-10 * std::max(1.0, orig)) {
            if (rank_deficient != nullptr) *rank_deficient = true;
            continue;
        }
        for (double& x : v) x /= r;
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Vec project_onto_basis(const Vec& y, const std::vector<Vec>& basis,
                              InnerProduct ip) {
    Vec out(y.size(), 0.0);
    for (const Vec& q : basis) {
        const double c = dot(y, q, ip);
        for (std::size_t i = 0; i < y.size(); ++i) out[i] += c * q[i];
    }
    return out;
}

}  // namespace detail

// Immutable indexed set of models sharing one design, with the enclosing
// space S_* and per-model orthonormalized bases precomputed at construction.
struct ModelCollection {
    DesignFamily design;
    std::vector<Model> models;
    std::vector<int> star_indices;

    std::vector<std::vector<Vec>> model_bases;
    std::vector<Vec> star_basis;
    bool rank_deficient = false;

    int n() const { return design.n(); }
    int d_star() const { return static_cast<int>(star_basis.size()); }
    int model_rank(std::size_t m) const { return static_cast<int>(model_bases[m].size()); }
};

inline ModelCollection make_collection(DesignFamily design,
                                       std::vector<Model> models,
                                       std::vector<int> star_indices) {
    validate_design(design);
    if (models.empty()) {
        throw std::invalid_argument("collection: no models");
    }
    std::sort(star_indices.begin(), star_indices.end());
    double prior_sum = 0.0;
    for (Model& m : models) {
        std::sort(m.column_indices.begin(), m.column_indices.end());
        if (std::adjacent_find(m.column_indices.begin(), m.column_indices.end()) !=
            m.column_indices.end()) {
            throw std::invalid_argument("collection: duplicate column index in model " + m.id);
        }
        if (m.prior <= 0.0) {
            throw std::invalid_argument("collection: non-positive prior in model " + m.id);
        }
        if (m.weight_L < 0.0) {
            throw std::invalid_argument("collection: negative L in model " + m.id);
        }
        if (!std::includes(star_indices.begin(), star_indices.end(),
                           m.column_indices.begin(), m.column_indices.end())) {
            throw std::invalid_argument("collection: model " + m.id + " not inside S_*");
        }
        prior_sum += m.prior;
    }
    if (std::abs(prior_sum - 1.0) > 1e-10) {
        throw std::invalid_argument("collection: priors sum to " + std::to_string(prior_sum));
    }

    ModelCollection c;
    c.design = std::move(design);
    c.models = std::move(models);
    c.star_indices = std::move(star_indices);
    c.star_basis = detail::orthonormal_basis(c.design, c.star_indices, &c.rank_deficient);
    if (c.d_star() >= c.n()) {
        throw std::invalid_argument("collection: dim(S_*) must be < n");
    }
    c.model_bases.reserve(c.models.size());
    for (const Model& m : c.models) {
        c.model_bases.push_back(
            detail::orthonormal_basis(c.design, m.column_indices, &c.rank_deficient));
    }
    return c;
}

// Orthogonal projection of Y onto the span of the model's columns.
inline Vec project(const Vec& y, std::size_t model_index, const ModelCollection& c) {
    if (model_index >= c.models.size()) {
        throw std::invalid_argument("project: model index out of range");
    }
    if (y.size() != static_cast<std::size_t>(c.n())) {
        throw std::invalid_argument("project: length mismatch");
    }
    return detail::project_onto_basis(y, c.model_bases[model_index], c.design.ip);
}

inline Vec project_star(const Vec& y, const ModelCollection& c) {
    if (y.size() != static_cast<std::size_t>(c.n())) {
        throw std::invalid_argument("project_star: length mismatch");
    }
    return detail::project_onto_basis(y, c.star_basis, c.design.ip);
}

}  // namespace gibbsmix

#endif  // GIBBSMIX_CORE_HPP
