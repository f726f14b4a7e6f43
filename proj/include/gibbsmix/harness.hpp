#ifndef GIBBSMIX_HARNESS_HPP
#define GIBBSMIX_HARNESS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gibbsmix/bounds.hpp"
#include "gibbsmix/collections.hpp"
#include "gibbsmix/core.hpp"
#include "gibbsmix/mixer.hpp"
#include "gibbsmix/rng.hpp"
#include "gibbsmix/scenario.hpp"
#include "gibbsmix/shrinkage.hpp"
#include "gibbsmix/tuning.hpp"

namespace gibbsmix {

// f(x) = 0.7 cos(x) + cos(7x) + 1.5 sin(x) + 0.8 sin(5x) + 0.9 sin(8x)
// sampled at x_i = i/n.
inline double signal_section5_at(double x) {
    return 0.7 * std::cos(x) + std::cos(7.0 * x) + 1.5 * std::sin(x) +
           0.8 * std::sin(5.0 * x) + 0.9 * std::sin(8.0 * x);
}

inline Vec signal_section5(int n) {
    if (n < 1) throw std::invalid_argument("signal_section5: n must be >= 1");
    Vec mu(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        mu[static_cast<std::size_t>(i - 1)] = signal_section5_at(static_cast<double>(i) / n);
    }
    return mu;
}

// Standard-basis orthonormal design: columns e_1..e_p in R^n.
inline DesignFamily standard_basis_design(int n, int p) {
    if (p >= n || p < 1) throw std::invalid_argument("standard_basis_design: need 1 <= p < n");
    DesignFamily d;
    d.ip = InnerProduct::euclidean;
    for (int j = 0; j < p; ++j) {
        Vec col(static_cast<std::size_t>(n), 0.0);
        col[static_cast<std::size_t>(j)] = 1.0;
        d.columns.push_back(std::move(col));
    }
    return d;
}

namespace detail {

inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace detail

inline double pairwise_mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return detail::pairwise_sum(v, 0, v.size()) / static_cast<double>(v.size());
}

struct McResult {
    double empirical_risk = 0.0;
    double std_error = 0.0;
    std::vector<double> per_rep_losses;
    BoundReport bound_report;
    double beta_used = 0.0;
    bool conditions_ok = false;
};

inline Vec scenario_signal(const Scenario& sc) {
    Vec mu;
    switch (sc.signal) {
        case SignalKind::zero:
            mu.assign(static_cast<std::size_t>(sc.n), 0.0);
            break;
        case SignalKind::fourier_section5:
            mu = signal_section5(sc.n);
            break;
        case SignalKind::bv_ramp:
            mu.resize(static_cast<std::size_t>(sc.n));
            for (int i = 1; i <= sc.n; ++i) {
                mu[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / sc.n;
            }
            break;
        case SignalKind::bv_step:
            mu.resize(static_cast<std::size_t>(sc.n));
            for (int i = 1; i <= sc.n; ++i) {
                mu[static_cast<std::size_t>(i - 1)] = (2 * i > sc.n) ? 1.0 : 0.0;
            }
            break;
        case SignalKind::explicit_vector:
            mu = sc.explicit_mu;
            if (static_cast<int>(mu.size()) != sc.n) {
                throw std::invalid_argument("scenario: mu length does not match n");
            }
            break;
    }
    for (double& v : mu) v *= sc.signal_scale;
    return mu;
}

inline ModelCollection build_scenario_collection(const Scenario& sc) {
    DesignFamily design = standard_basis_design(sc.n, sc.p);
    switch (sc.collection) {
        case CollectionKind::all_subsets:
            return all_subsets(std::move(design), sc.alpha, sc.b);
        case CollectionKind::ordered_linear:
            return ordered_linear(std::move(design), sc.alpha);
        case CollectionKind::unordered_linear:
            return unordered_linear(std::move(design), sc.q);
    }
    throw std::logic_error("unreachable");
}

// Deterministic Monte Carlo risk estimate: per-rep generators are keyed by
// master_seed and rep index, so the result is identical for any worker count.
inline McResult mc_risk(const Scenario& sc) {
    const Vec mu = scenario_signal(sc);
    const ModelCollection collection = build_scenario_collection(sc);

    MixConfig cfg = sc.config;
    if (sc.beta_from_theorem1) {
        cfg.beta = beta_max_theorem1(sc.n, sc.n - collection.d_star());
    }

    std::vector<Vec> fixed_basis;
    bool dummy = false;
    if (sc.estimator == EstimatorKind::fixed_model) {
        fixed_basis = detail::orthonormal_basis(collection.design, sc.fixed_model_indices, &dummy);
    }

    McResult out;
    out.beta_used = cfg.beta;
    out.conditions_ok =
        check_theorem1_conditions(cfg.beta, sc.n - collection.d_star(), sc.n);
    out.per_rep_losses.resize(static_cast<std::size_t>(sc.reps));
    for (int rep = 0; rep < sc.reps; ++rep) {
        CounterRng rng = CounterRng::for_rep(sc.master_seed, static_cast<std::uint64_t>(rep));
        Vec y(mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) {
            y[i] = mu[i] + sc.sigma * (sc.sigma > 0.0 ? rng.normal() : 0.0);
        }
        Vec mu_hat;
        if (sc.estimator == EstimatorKind::fixed_model) {
            mu_hat = detail::project_onto_basis(y, fixed_basis, collection.design.ip);
        } else {
            mu_hat = mix(y, collection, cfg).mu_hat;
        }
        double loss = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            const double d = mu[i] - mu_hat[i];
            loss += d * d;
        }
        out.per_rep_losses[static_cast<std::size_t>(rep)] = loss;
    }
    out.empirical_risk = pairwise_mean(out.per_rep_losses);
    double ss = 0.0;
    for (double l : out.per_rep_losses) {
        const double d = l - out.empirical_risk;
        ss += d * d;
    }
    if (sc.reps > 1) {
        out.std_error = std::sqrt(ss / (sc.reps - 1)) / std::sqrt(static_cast<double>(sc.reps));
    }
    const double sigma2 = sc.sigma > 0.0 ? sc.sigma * sc.sigma : 1.0;
    const bool use_model_l = sc.config.l_rule != LRule::half_dim;
    out.bound_report = theorem1_bounds(mu, collection, sigma2, cfg.beta, use_model_l);
    return out;
}

// --- Illustration on the n=60 trigonometric design ---------------------------

struct IllustrationResult {
    Vec x;        // grid i/n
    Vec mu;       // true signal samples
    Vec y;        // one noisy draw
    Vec mu_hat;   // shrinkage estimate
    ShrinkResult shrink;
    double sigma2_hat = 0.0;
    double a0 = 0.0;
    std::vector<double> a;  // cosine coefficients 1..20
    std::vector<double> b;  // sine coefficients 1..20
};

inline IllustrationResult run_illustration(double sigma, std::uint64_t seed,
                                           double beta = 1.0 / 3.0, double alpha = 1.0,
                                           double b_param = 1.0) {
    const int n = 60;
    const DesignFamily design = fourier_design(n);
    IllustrationResult res;
    res.mu = signal_section5(n);
    res.x.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) res.x[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / n;

    CounterRng rng = CounterRng::for_rep(seed, 0);
    res.y.resize(res.mu.size());
    for (std::size_t i = 0; i < res.mu.size(); ++i) {
        res.y[i] = res.mu[i] + sigma * (sigma > 0.0 ? rng.normal() : 0.0);
    }

    const int p = design.p();  // 41, N_* = 19
    std::vector<double> z(static_cast<std::size_t>(p));
    double fit2 = 0.0;
    for (int j = 0; j < p; ++j) {
        z[static_cast<std::size_t>(j)] = dot(res.y, design.columns[static_cast<std::size_t>(j)], design.ip);
        fit2 += z[static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(j)];
    }
    res.sigma2_hat = (norm2(res.y, design.ip) - fit2) / (n - p);
    if (res.sigma2_hat <= 0.0) {
        throw std::runtime_error("run_illustration: degenerate residual");
    }
    res.shrink = shrink_unknown_variance(z, res.sigma2_hat, beta, alpha, b_param);

    res.mu_hat.assign(res.mu.size(), 0.0);
    for (int j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < res.mu_hat.size(); ++i) {
            res.mu_hat[i] += res.shrink.shrunk[static_cast<std::size_t>(j)] *
                             design.columns[static_cast<std::size_t>(j)][i];
        }
    }

    res.a0 = std::sqrt(1.0 / n) * dot(res.mu_hat, design.columns[20], design.ip);
    res.a.resize(20);
    res.b.resize(20);
    for (int j = 1; j <= 20; ++j) {
        res.b[static_cast<std::size_t>(j - 1)] =
            std::sqrt(2.0 / n) * dot(res.mu_hat, design.columns[static_cast<std::size_t>(j - 1)], design.ip);
        res.a[static_cast<std::size_t>(j - 1)] =
            std::sqrt(2.0 / n) * dot(res.mu_hat, design.columns[static_cast<std::size_t>(j + 20)], design.ip);
    }
    return res;
}

// --- Output writers -------------------------------------------------------------

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

// CSV: header row, '.' decimal point, 17 significant digits, LF endings.
inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<Vec>& columns) {
    if (header.size() != columns.size()) {
        throw std::invalid_argument("write_csv: header/column count mismatch");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j > 0) out << ',';
        out << header[j];
    }
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (j > 0) out << ',';
            out << detail::fmt17(columns[j][i]);
        }
        out << '\n';
    }
}

inline void write_illustration_csv(const std::string& path, const IllustrationResult& r) {
    write_csv(path, {"x", "signal", "observation", "estimate"},
              {r.x, r.mu, r.y, r.mu_hat});
}

// Minimal SVG polyline plot: signal and estimate as polylines, observations
// as crosses, fixed 800x500 viewBox.
inline void write_illustration_svg(const std::string& path, const IllustrationResult& r) {
    const double w = 800.0, h = 500.0, margin = 40.0;
    double ymin = 1e300, ymax = -1e300;
    for (const Vec* v : {&r.mu, &r.y, &r.mu_hat}) {
        for (double t : *v) {
            ymin = std::min(ymin, t);
            ymax = std::max(ymax, t);
        }
    }
    const double yspan = std::max(ymax - ymin, 1e-12);
    auto px = [&](double x) { return margin + x * (w - 2 * margin); };
    auto py = [&](double y) { return h - margin - (y - ymin) / yspan * (h - 2 * margin); };
    auto polyline = [&](const Vec& v, const char* color) {
        std::string s = "<polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += detail::fmt17(px(r.x[i])) + "," + detail::fmt17(py(v[i])) + " ";
        }
        s += "\"/>\n";
        return s;
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_illustration_svg: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n";
    for (std::size_t i = 0; i < r.y.size(); ++i) {
        const double cx = px(r.x[i]), cy = py(r.y[i]);
        out << "<path stroke=\"gray\" stroke-width=\"1\" d=\"M" << cx - 3 << ' ' << cy - 3
            << " L" << cx + 3 << ' ' << cy + 3 << " M" << cx - 3 << ' ' << cy + 3 << " L"
            << cx + 3 << ' ' << cy - 3 << "\"/>\n";
    }
    out << polyline(r.mu, "black");
    out << polyline(r.mu_hat, "red");
    out << "</svg>\n";
}

}  // namespace gibbsmix

#endif  // GIBBSMIX_HARNESS_HPP
