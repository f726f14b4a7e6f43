#ifndef GIBBSMIX_MIXER_HPP
#define GIBBSMIX_MIXER_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gibbsmix/core.hpp"

namespace gibbsmix {

enum class LRule {
    half_dim,              // L_m = dim(S_m)/2 (true rank)
    per_model,             // L_m taken from Model::weight_L
    b_times_cardinality,   // L_m = b * |m|
};

enum class VarianceMode { residual_estimate, known };

struct MixConfig {
    double beta = 0.0;
    LRule l_rule = LRule::half_dim;
    double b = 0.0;        // used by b_times_cardinality
    VarianceMode variance_mode = VarianceMode::residual_estimate;
    double sigma2 = 0.0;   // used by VarianceMode::known
};

struct MixResult {
    Vec mu_hat;
    std::vector<double> weights;  // parallel to collection.models
    double sigma2_hat = 0.0;
    double log_partition = 0.0;
    bool rank_deficient = false;
};

// ||Y - Pi_{S_*} Y||^2 / N_* with N_* = n - d_* (euclidean norm).
inline double residual_variance(const Vec& y, const ModelCollection& c) {
    const Vec py = project_star(y, c);
    double rss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y[i] - py[i];
        rss += d * d;
    }
    return rss / (c.n() - c.d_star());
}

namespace detail {

inline double model_weight_L(const ModelCollection& c, std::size_t m, const MixConfig& cfg) {
    switch (cfg.l_rule) {
        case LRule::half_dim:
            return 0.5 * c.model_rank(m);
        case LRule::per_model:
            return c.models[m].weight_L;
        case LRule::b_times_cardinality:
            return cfg.b * static_cast<double>(c.models[m].column_indices.size());
    }
    return 0.0;
}

}  // namespace detail

// Gibbs mixture of the per-model least-squares estimators.
//
// residual_estimate: w_m ~ pi_m exp(beta ||mu_hat_m||^2 / sigma2_hat - L_m)
// known:             w_m ~ pi_m exp(-beta [||Y - mu_hat_m||^2/sigma2 + 2 dim(S_m) - n])
//
// Exponents go through log-sum-exp with max-subtraction.
inline MixResult mix(const Vec& y, const ModelCollection& c, const MixConfig& cfg) {
    if (!(cfg.beta > 0.0)) {
        throw std::invalid_argument("mix: beta must be > 0");
    }
    if (c.models.empty()) {
        throw std::invalid_argument("mix: empty collection");
    }

    MixResult res;
    res.rank_deficient = c.rank_deficient;
    if (cfg.variance_mode == VarianceMode::residual_estimate) {
        res.sigma2_hat = residual_variance(y, c);
        if (res.sigma2_hat <= 0.0) {
            throw std::runtime_error("mix: degenerate residual (Y lies in S_*)");
        }
    } else {
        if (!(cfg.sigma2 > 0.0)) {
            throw std::invalid_argument("mix: known variance must be > 0");
        }
        res.sigma2_hat = cfg.sigma2;
    }

    const std::size_t nm = c.models.size();
    std::vector<Vec> projections(nm);
    std::vector<double> log_w(nm);
    const double euclid_scale =
        c.design.ip == InnerProduct::normalized ? static_cast<double>(c.n()) : 1.0;
    for (std::size_t m = 0; m < nm; ++m) {
        projections[m] = project(y, m, c);
        const double lpi = std::log(c.models[m].prior);
        if (cfg.variance_mode == VarianceMode::residual_estimate) {
            const double fit = euclid_scale * norm2(projections[m], c.design.ip);
            log_w[m] = lpi + cfg.beta * fit / res.sigma2_hat - detail::model_weight_L(c, m, cfg);
        } else {
            double rss = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                const double d = y[i] - projections[m][i];
                rss += d * d;
            }
            log_w[m] = lpi - cfg.beta * (rss / cfg.sigma2 + 2.0 * c.model_rank(m) - c.n());
        }
    }

    double max_lw = -std::numeric_limits<double>::infinity();
    for (double lw : log_w) max_lw = std::max(max_lw, lw);
    double z = 0.0;
    for (double lw : log_w) z += std::exp(lw - max_lw);
    res.log_partition = max_lw + std::log(z);

    res.weights.resize(nm);
    res.mu_hat.assign(y.size(), 0.0);
    for (std::size_t m = 0; m < nm; ++m) {
        res.weights[m] = std::exp(log_w[m] - res.log_partition);
        for (std::size_t i = 0; i < y.size(); ++i) {
            res.mu_hat[i] += res.weights[m] * projections[m][i];
        }
    }
    return res;
}

}  // namespace gibbsmix

#endif  // GIBBSMIX_MIXER_HPP
