// Command-line front end: illustrate, mc-risk, cbeta, bounds, approx.
//
// Exit codes: 0 success, 2 invalid input, 3 failed precondition under --strict.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gibbsmix/gibbsmix.hpp"

namespace {

int cmd_illustrate(double sigma, std::uint64_t seed, const std::string& out_dir) {
    const gibbsmix::IllustrationResult res = gibbsmix::run_illustration(sigma, seed);
    gibbsmix::write_illustration_csv(out_dir + "/illustration.csv", res);
    gibbsmix::write_illustration_svg(out_dir + "/illustration.svg", res);
    std::printf("n=60 p=41 sigma2_hat=%.6g\n", res.sigma2_hat);
    std::printf("a0=%.6g\n", res.a0);
    for (int j = 1; j <= 20; ++j) {
        std::printf("a%d=%.6g b%d=%.6g\n", j, res.a[j - 1], j, res.b[j - 1]);
    }
    std::printf("wrote %s/illustration.csv and %s/illustration.svg\n", out_dir.c_str(),
                out_dir.c_str());
    return 0;
}

int cmd_mc_risk(const std::string& file, int reps_override, std::int64_t seed_override,
                bool strict) {
    gibbsmix::Scenario sc = gibbsmix::parse_scenario(gibbsmix::parse_key_value_file(file));
    if (reps_override > 0) sc.reps = reps_override;
    if (seed_override >= 0) sc.master_seed = static_cast<std::uint64_t>(seed_override);
    const gibbsmix::McResult res = gibbsmix::mc_risk(sc);
    if (strict && !res.conditions_ok) {
        std::cerr << "tuning conditions violated (beta=" << res.beta_used << ")\n";
        return 3;
    }
    std::printf("reps=%d beta=%.6g conditions_ok=%d\n", sc.reps, res.beta_used,
                res.conditions_ok ? 1 : 0);
    std::printf("empirical_risk=%.10g std_error=%.4g\n", res.empirical_risk, res.std_error);
    std::printf("foracle_rhs=%.10g fgibbs_rhs=%.10g\n", res.bound_report.foracle_rhs,
                res.bound_report.fgibbs_rhs);
    return 0;
}

int cmd_cbeta(double beta, const std::vector<int>& p_grid) {
    for (int p : p_grid) {
        std::printf("p=%d c_beta=%.8g\n", p, gibbsmix::c_beta(p, beta));
    }
    return 0;
}

int cmd_bounds(const std::string& file) {
    gibbsmix::Scenario sc = gibbsmix::parse_scenario(gibbsmix::parse_key_value_file(file));
    const gibbsmix::Vec mu = gibbsmix::scenario_signal(sc);
    const gibbsmix::ModelCollection coll = gibbsmix::build_scenario_collection(sc);
    double beta = sc.config.beta;
    if (sc.beta_from_theorem1) {
        beta = gibbsmix::beta_max_theorem1(sc.n, sc.n - coll.d_star());
    }
    const double sigma2 = sc.sigma > 0.0 ? sc.sigma * sc.sigma : 1.0;
    const gibbsmix::BoundReport r = gibbsmix::theorem1_bounds(mu, coll, sigma2, beta);
    std::printf("beta=%.8g epsilon_n=%.8g sigma_bar2=%.8g\n", beta, r.epsilon_n, r.sigma_bar2);
    std::printf("foracle_rhs=%.10g fgibbs_rhs=%.10g crude_rhs=%.10g\n", r.foracle_rhs,
                r.fgibbs_rhs, r.crude_rhs);
    std::printf("best_model=%s\n", coll.models[r.best_model].id.c_str());
    return 0;
}

int cmd_approx(const std::string& function, int n, int levels) {
    gibbsmix::Vec samples(static_cast<std::size_t>(n));
    if (function == "ramp") {
        for (int i = 1; i <= n; ++i) samples[i - 1] = static_cast<double>(i) / n;
    } else if (function == "step") {
        for (int i = 1; i <= n; ++i) samples[i - 1] = (2 * i > n) ? 1.0 : 0.0;
    } else if (function == "staircase") {
        for (int i = 1; i <= n; ++i) samples[i - 1] = std::floor(5.0 * i / (n + 1.0));
    } else {
        std::cerr << "unknown function: " << function << "\n";
        return 2;
    }
    const gibbsmix::SampledFunction f = gibbsmix::make_sampled(samples);
    const int jn = gibbsmix::dyadic_levels(n);
    const int jmax = levels > 0 ? std::min(levels, jn) : jn;
    std::printf("n=%d V(f)=%.8g\n", n, f.total_variation);
    for (int j = 0; j <= jmax; ++j) {
        const double lin = gibbsmix::distance_n(f.samples, gibbsmix::linear_approx(f, j).samples);
        std::printf("J=%d linear_err=%.8g", j, lin);
        if (j >= 1) {
            const double comp =
                gibbsmix::distance_n(f.samples, gibbsmix::compressed_approx(f, j).samples);
            std::printf(" compressed_err=%.8g kept=%d", comp,
                        gibbsmix::compressed_kept_total(f, j));
        }
        std::printf("\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gibbs-mixture aggregation of least-squares estimators"};
    app.require_subcommand(1);

    auto* illustrate = app.add_subcommand("illustrate", "Reproduce the n=60 Fourier example");
    double sigma = 1.0;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    illustrate->add_option("--sigma", sigma, "noise level");
    illustrate->add_option("--seed", seed, "master seed");
    illustrate->add_option("--out-dir", out_dir, "output directory");

    auto* mc = app.add_subcommand("mc-risk", "Monte Carlo risk for a scenario file");
    std::string scenario_file;
    int reps = 0;
    std::int64_t seed_override = -1;
    bool strict = false;
    mc->add_option("--scenario", scenario_file, "scenario file")->required();
    mc->add_option("--reps", reps, "override rep count");
    mc->add_option("--seed", seed_override, "override master seed");
    mc->add_flag("--strict", strict, "exit 3 when tuning conditions fail");

    auto* cbeta = app.add_subcommand("cbeta", "Evaluate the c_beta(p) constant");
    double beta = 0.5;
    std::vector<int> p_grid;
    cbeta->add_option("--beta", beta, "beta in (0, 1/2]");
    cbeta->add_option("--p-grid", p_grid, "p values")->required();

    auto* bounds = app.add_subcommand("bounds", "Risk-bound report for a scenario file");
    std::string bounds_file;
    bounds->add_option("--scenario", bounds_file, "scenario file")->required();

    auto* approx = app.add_subcommand("approx", "Haar approximation table");
    std::string function = "ramp";
    int n = 256;
    int levels = 0;
    approx->add_option("--function", function, "ramp | step | staircase");
    approx->add_option("--n", n, "sample count (power of two)");
    approx->add_option("--levels", levels, "max level J (default: all)");

    try {
        app.parse(argc, argv);
        if (illustrate->parsed()) return cmd_illustrate(sigma, seed, out_dir);
        if (mc->parsed()) return cmd_mc_risk(scenario_file, reps, seed_override, strict);
        if (cbeta->parsed()) return cmd_cbeta(beta, p_grid);
        if (bounds->parsed()) return cmd_bounds(bounds_file);
        if (approx->parsed()) return cmd_approx(function, n, levels);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
