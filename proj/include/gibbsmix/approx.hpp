#ifndef GIBBSMIX_APPROX_HPP
#define GIBBSMIX_APPROX_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gibbsmix/collections.hpp"
#include "gibbsmix/core.hpp"

namespace gibbsmix {

// Series constant sum_{p>=1} p^3 2^{-p/2+1} from the compressed-approximant
// bound, evaluated once to convergence 1e-12.
inline constexpr double kCompressConstant = 831.77878733768994;

// A function known through its samples on the dyadic grid, together with the
// discrete total variation of the sample sequence.
struct SampledFunction {
    Vec samples;
    double total_variation = 0.0;
};

inline double discrete_total_variation(const Vec& samples) {
    double tv = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        tv += std::abs(samples[i] - samples[i - 1]);
    }
    return tv;
}

inline SampledFunction make_sampled(Vec samples) {
    const std::size_t n = samples.size();
    if (n < 8 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("sampled function: n must be a power of two >= 8");
    }
    SampledFunction f;
    f.total_variation = discrete_total_variation(samples);
    f.samples = std::move(samples);
    return f;
}

inline int dyadic_levels(int n) {
    int jn = 0;
    while ((1 << jn) < n) ++jn;
    return jn;
}

// Full Haar analysis: one coefficient per level-j index, j = 0..J_n,
// flattened with levels() giving the offsets.
struct HaarCoefficients {
    int n = 0;
    int j_max = 0;                           // J_n
    std::vector<std::vector<double>> c;      // c[j][k] = (f, phi_{j,k})_n
};

inline HaarCoefficients haar_coefficients(const SampledFunction& f) {
    const int n = static_cast<int>(f.samples.size());
    const int jn = dyadic_levels(n);
    HaarCoefficients hc;
    hc.n = n;
    hc.j_max = jn;
    hc.c.resize(static_cast<std::size_t>(jn) + 1);
    hc.c[0] = {dot(f.samples, haar_vector(n, 0, 0), InnerProduct::normalized)};
    for (int j = 1; j <= jn; ++j) {
        const int count = 1 << (j - 1);
        hc.c[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(count));
        for (int k = 0; k < count; ++k) {
            hc.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                dot(f.samples, haar_vector(n, j, k), InnerProduct::normalized);
        }
    }
    return hc;
}

namespace detail {

inline Vec reconstruct(const HaarCoefficients& hc,
                       const std::vector<std::vector<bool>>& keep) {
    Vec out(static_cast<std::size_t>(hc.n), 0.0);
    for (int j = 0; j <= hc.j_max; ++j) {
        const auto& level = hc.c[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < level.size(); ++k) {
            if (!keep[static_cast<std::size_t>(j)][k]) continue;
            const Vec v = haar_vector(hc.n, j, static_cast<int>(k));
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += level[k] * v[i];
        }
    }
    return out;
}

inline std::vector<std::vector<bool>> keep_none(const HaarCoefficients& hc) {
    std::vector<std::vector<bool>> keep(static_cast<std::size_t>(hc.j_max) + 1);
    for (int j = 0; j <= hc.j_max; ++j) {
        keep[static_cast<std::size_t>(j)].assign(hc.c[static_cast<std::size_t>(j)].size(), false);
    }
    return keep;
}

}  // namespace detail

// f_J: keep every coefficient with level j <= J.
inline SampledFunction linear_approx(const SampledFunction& f, int j_keep) {
    const HaarCoefficients hc = haar_coefficients(f);
    if (j_keep < 0 || j_keep > hc.j_max) {
        throw std::invalid_argument("linear_approx: J out of range");
    }
    auto keep = detail::keep_none(hc);
    for (int j = 0; j <= j_keep; ++j) {
        keep[static_cast<std::size_t>(j)].assign(hc.c[static_cast<std::size_t>(j)].size(), true);
    }
    return make_sampled(detail::reconstruct(hc, keep));
}

// Number of coefficients kept at level j by the compressed approximant:
// K_{j,J} = floor((j-J+1)^{-3} 2^{J-2}).
inline int compressed_keep_count(int j, int j_cut) {
    return static_cast<int>(
        std::floor(std::pow(2.0, j_cut - 2) / std::pow(j - j_cut + 1.0, 3.0)));
}

// f~_J: levels j <= J-1 kept fully; for J <= j <= J_n the K_{j,J} largest
// |c_{j,k}| are kept, ties broken toward smaller k.
inline SampledFunction compressed_approx(const SampledFunction& f, int j_cut) {
    const HaarCoefficients hc = haar_coefficients(f);
    if (j_cut < 1 || j_cut > hc.j_max) {
        throw std::invalid_argument("compressed_approx: J out of range");
    }
    auto keep = detail::keep_none(hc);
    for (int j = 0; j <= j_cut - 1; ++j) {
        keep[static_cast<std::size_t>(j)].assign(hc.c[static_cast<std::size_t>(j)].size(), true);
    }
    for (int j = j_cut; j <= hc.j_max; ++j) {
        const auto& level = hc.c[static_cast<std::size_t>(j)];
        const int kcount = std::min<int>(compressed_keep_count(j, j_cut),
                                         static_cast<int>(level.size()));
        if (kcount <= 0) continue;
        std::vector<std::size_t> order(level.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(level[a]) > std::abs(level[b]);
        });
        for (int r = 0; r < kcount; ++r) {
            keep[static_cast<std::size_t>(j)][order[static_cast<std::size_t>(r)]] = true;
        }
    }
    return make_sampled(detail::reconstruct(hc, keep));
}

// Total number of coefficients compressed_approx keeps for a given J.
inline int compressed_kept_total(const SampledFunction& f, int j_cut) {
    const int n = static_cast<int>(f.samples.size());
    const int jn = dyadic_levels(n);
    int total = 1;  // (0,0)
    for (int j = 1; j <= j_cut - 1; ++j) total += 1 << (j - 1);
    for (int j = j_cut; j <= jn; ++j) {
        total += std::min(compressed_keep_count(j, j_cut), 1 << (j - 1));
    }
    return total;
}

// Checks sum_k |c_{j,k}| <= 2^{-(j+1)/2} V(f) for each level j >= 1.
inline std::vector<bool> bv_coefficient_bound_check(const SampledFunction& f) {
    const HaarCoefficients hc = haar_coefficients(f);
    std::vector<bool> ok;
    ok.reserve(static_cast<std::size_t>(hc.j_max));
    for (int j = 1; j <= hc.j_max; ++j) {
        double sum_abs = 0.0;
        for (double c : hc.c[static_cast<std::size_t>(j)]) sum_abs += std::abs(c);
        ok.push_back(sum_abs <= std::pow(2.0, -(j + 1) / 2.0) * f.total_variation + 1e-12);
    }
    return ok;
}

inline double norm_n(const Vec& x) { return std::sqrt(norm2(x, InnerProduct::normalized)); }

inline double distance_n(const Vec& a, const Vec& b) {
    Vec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return norm_n(d);
}

}  // namespace gibbsmix

#endif  // GIBBSMIX_APPROX_HPP
