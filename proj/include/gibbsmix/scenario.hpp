#ifndef GIBBSMIX_SCENARIO_HPP
#define GIBBSMIX_SCENARIO_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gibbsmix/core.hpp"
#include "gibbsmix/mixer.hpp"

namespace gibbsmix {

// Flat key-value scenario file: UTF-8, `key = value`, one per line, `#`
// comments. Vectors are comma-separated decimals.
using KeyValueMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline KeyValueMap parse_key_values(std::istream& in) {
    KeyValueMap kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("scenario: malformed line: " + line);
        }
        kv[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
    }
    return kv;
}

inline KeyValueMap parse_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scenario: cannot open " + path);
    return parse_key_values(in);
}

inline Vec parse_vector(const std::string& s) {
    Vec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = detail::trim(tok);
        if (tok.empty()) continue;
        v.push_back(std::stod(tok));
    }
    return v;
}

enum class SignalKind { explicit_vector, fourier_section5, zero, bv_ramp, bv_step };
enum class CollectionKind { all_subsets, ordered_linear, unordered_linear };
enum class EstimatorKind { mixture, fixed_model };

// Everything one Monte Carlo run needs. The collection is described, not
// built; harness::build_scenario_collection materializes it.
struct Scenario {
    SignalKind signal = SignalKind::zero;
    Vec explicit_mu;
    double signal_scale = 1.0;

    CollectionKind collection = CollectionKind::all_subsets;
    int n = 0;
    int p = 0;
    int q = 0;           // unordered_linear only
    double alpha = 1.0;  // prior decay
    double b = 1.0;      // L_m = b|m| for all_subsets

    EstimatorKind estimator = EstimatorKind::mixture;
    std::vector<int> fixed_model_indices;  // 1-based in the file

    MixConfig config;
    bool beta_from_theorem1 = false;

    double sigma = 1.0;
    int reps = 1;
    std::uint64_t master_seed = 0;
};

inline Scenario parse_scenario(const KeyValueMap& kv) {
    Scenario sc;
    auto get = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("scenario: missing key " + key);
        return it->second;
    };
    auto get_or = [&](const std::string& key, const std::string& fallback) {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };

    sc.n = std::stoi(get("n"));
    sc.p = std::stoi(get("p"));
    sc.q = std::stoi(get_or("q", "0"));
    sc.sigma = std::stod(get_or("sigma", "1"));
    sc.reps = std::stoi(get_or("reps", "1"));
    sc.master_seed = std::stoull(get_or("seed", "0"));
    sc.alpha = std::stod(get_or("alpha", "1"));
    sc.b = std::stod(get_or("b", "1"));
    sc.signal_scale = std::stod(get_or("signal_scale", "1"));

    const std::string sig = get_or("signal", "zero");
    if (sig == "zero") {
        sc.signal = SignalKind::zero;
    } else if (sig == "fourier_section5") {
        sc.signal = SignalKind::fourier_section5;
    } else if (sig == "bv_ramp") {
        sc.signal = SignalKind::bv_ramp;
    } else if (sig == "bv_step") {
        sc.signal = SignalKind::bv_step;
    } else if (sig == "explicit") {
        sc.signal = SignalKind::explicit_vector;
        sc.explicit_mu = parse_vector(get("mu"));
    } else {
        throw std::invalid_argument("scenario: unknown signal " + sig);
    }

    const std::string coll = get_or("collection", "all_subsets");
    if (coll == "all_subsets") {
        sc.collection = CollectionKind::all_subsets;
    } else if (coll == "ordered_linear") {
        sc.collection = CollectionKind::ordered_linear;
    } else if (coll == "unordered_linear") {
        sc.collection = CollectionKind::unordered_linear;
    } else {
        throw std::invalid_argument("scenario: unknown collection " + coll);
    }

    const std::string est = get_or("estimator", "mixture");
    if (est == "mixture") {
        sc.estimator = EstimatorKind::mixture;
    } else if (est == "fixed_model") {
        sc.estimator = EstimatorKind::fixed_model;
        for (double v : parse_vector(get("model_indices"))) {
            sc.fixed_model_indices.push_back(static_cast<int>(v) - 1);
        }
    } else {
        throw std::invalid_argument("scenario: unknown estimator " + est);
    }

    const std::string beta = get_or("beta", "theorem1");
    if (beta == "theorem1") {
        sc.beta_from_theorem1 = true;
    } else {
        sc.config.beta = std::stod(beta);
    }
    const std::string lrule = get_or("l_rule", "half_dim");
    if (lrule == "half_dim") {
        sc.config.l_rule = LRule::half_dim;
    } else if (lrule == "per_model") {
        sc.config.l_rule = LRule::per_model;
    } else if (lrule == "b_times_cardinality") {
        sc.config.l_rule = LRule::b_times_cardinality;
        sc.config.b = sc.b;
    } else {
        throw std::invalid_argument("scenario: unknown l_rule " + lrule);
    }
    if (kv.count("known_sigma2") != 0) {
        sc.config.variance_mode = VarianceMode::known;
        sc.config.sigma2 = std::stod(kv.at("known_sigma2"));
    }
    if (sc.reps < 1) throw std::invalid_argument("scenario: reps must be >= 1");
    if (!(sc.sigma >= 0.0)) throw std::invalid_argument("scenario: sigma must be >= 0");
    return sc;
}

}  // namespace gibbsmix

#endif  // GIBBSMIX_SCENARIO_HPP
