#pragma once

// Command implementations for the `kplot` executable. Kept in a header so the
// test suite can drive them in-process.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kplot/kplot.hpp"

namespace kplot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitComputationError = 2;

struct AnalyzeOptions {
    std::string input;
    bool header = false;
    std::size_t x_col = 1;
    std::size_t y_col = 2;
    std::size_t bootstrap = 0;
    std::vector<double> levels{0.90, 0.95};
    std::uint64_t seed = 1;
    std::size_t grid = kDefaultGridSize;
    std::optional<double> tolerance;
    std::string out_dir;
};

struct SimulateOptions {
    std::string family;
    double param = 0.0;
    std::size_t n = 200;
    std::size_t reps = 500;
    std::uint64_t seed = 1;
    std::string plackett_variant = "printed";
    std::string out;
};

struct FgmCurveOptions {
    double gamma_min = -0.99;
    double gamma_max = 0.99;
    std::size_t steps = 198;
    std::vector<std::string> methods{"closed"};
    std::size_t mc_draws = 1000000;
    std::uint64_t seed = 1;
    std::string out;
};

struct EtaCurveOptions {
    std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::size_t n_fit = 30000;
    std::size_t n_eval = 5000;
    std::uint64_t seed = 1;
    std::string out;
};

struct SampleOptions {
    std::string family;
    double param = 0.0;
    std::size_t n = 1000;
    std::uint64_t seed = 1;
    std::string plackett_variant = "printed";
    std::string out;
};

namespace detail {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    return out;
}

inline PlackettVariant parse_plackett_variant(const std::string& s) {
    if (s == "printed") return PlackettVariant::printed;
    if (s == "textbook") return PlackettVariant::textbook;
    throw InputError("unknown Plackett variant '" + s + "'");
}

}  // namespace detail

inline int analyze(const AnalyzeOptions& opt, std::ostream& err) {
    const auto sample = load_csv(opt.input, opt.header, opt.x_col, opt.y_col);
    if (opt.grid < 2) throw InputError("--grid must be at least 2");
    const auto& ties = sample.tie_report();
    if (ties.any()) {
        err << "warning: input has tied values (" << ties.x_tie_count << " x ties, " << ties.y_tie_count
            << " y ties); results use the strict/weak counting conventions\n";
    }

    const QuadrantTable table(sample);
    AnalysisReport report;
    report.seed = opt.seed;
    report.sample = {sample.size(), ties, opt.input};
    report.d = d_vector(table);
    total_auk(table);  // throws on a failed cross-check
    report.signs = classify_dependence(report.d, opt.tolerance.value_or(default_neutrality_tolerance(sample.size())));
    if (opt.bootstrap > 0) {
        BootstrapSection sec;
        sec.replicates = opt.bootstrap;
        sec.levels = opt.levels;
        sec.estimates = bootstrap_all(sample, opt.bootstrap, opt.levels, opt.seed);
        report.bootstrap = std::move(sec);
    }
    const auto curves = kendall_curves(table, opt.grid);

    const std::filesystem::path dir(opt.out_dir);
    std::filesystem::create_directories(dir);
    {
        auto out = detail::open_output((dir / "report.json").string());
        out << to_json(report).dump(2) << '\n';
    }
    render_kplot(curves, (dir / "kplot.svg").string());
    export_curves_csv(curves, (dir / "curves.csv").string());
    return kExitOk;
}

inline int simulate(const SimulateOptions& opt) {
    SamplerSpec spec;
    spec.family = sampler_family_from_string(opt.family);
    spec.param = opt.param;
    spec.n = opt.n;
    spec.seed = opt.seed;
    spec.plackett_variant = detail::parse_plackett_variant(opt.plackett_variant);
    spec.validate();
    const auto summary = kplot::simulate(spec, opt.reps);
    auto out = detail::open_output(opt.out);
    write_simulation_csv(out, summary);
    return kExitOk;
}

inline int fgm_curve(const FgmCurveOptions& opt) {
    if (!(std::abs(opt.gamma_min) < 1.0 && std::abs(opt.gamma_max) < 1.0)) {
        throw InputError("gamma range must lie inside (-1, 1)");
    }
    if (!(opt.gamma_min <= opt.gamma_max)) throw InputError("--gamma-min must not exceed --gamma-max");
    if (opt.steps < 1 && opt.gamma_min != opt.gamma_max) throw InputError("--steps must be at least 1");
    for (const auto& m : opt.methods) {
        if (m != "closed" && m != "quadrature" && m != "mc") throw InputError("unknown method '" + m + "'");
    }
    auto out = detail::open_output(opt.out);
    out << "gamma";
    for (const auto& m : opt.methods) out << ',' << m;
    out << '\n';
    const std::size_t rows = opt.gamma_min == opt.gamma_max ? 1 : opt.steps + 1;
    for (std::size_t i = 0; i < rows; ++i) {
        const double gamma = rows == 1 ? opt.gamma_min
                                       : opt.gamma_min + (opt.gamma_max - opt.gamma_min) * static_cast<double>(i) /
                                                             static_cast<double>(opt.steps);
        const FgmParameter p(gamma);
        out << format_double(gamma);
        for (const auto& m : opt.methods) {
            double v = 0.0;
            if (m == "closed") v = auk_fgm_closed(p);
            else if (m == "quadrature") v = auk_fgm_quadrature(p);
            else v = auk_fgm_mc(p, opt.mc_draws, derive_seed(opt.seed, i)).mean;
            out << ',' << format_double(v);
        }
        out << '\n';
    }
    return kExitOk;
}

inline int eta(const EtaCurveOptions& opt) {
    const auto table = eta_curve(opt.grid, {opt.n_fit, opt.n_eval, opt.seed});
    auto out = detail::open_output(opt.out);
    write_eta_csv(out, table);
    return kExitOk;
}

inline int sample(const SampleOptions& opt) {
    SamplerSpec spec;
    spec.family = sampler_family_from_string(opt.family);
    spec.param = opt.param;
    spec.n = opt.n;
    spec.seed = opt.seed;
    spec.plackett_variant = detail::parse_plackett_variant(opt.plackett_variant);
    const auto s = draw(spec);
    auto out = detail::open_output(opt.out);
    write_csv(out, s);
    return kExitOk;
}

/// Parses argv-style arguments (args[0] is the program name) and runs the
/// selected subcommand. Exit codes: 0 success, 1 input error, 2 computation error.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Multi-panel Kendall plots and AUK dependence indices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kSoftwareVersion));

    AnalyzeOptions an;
    auto* analyze_cmd = app.add_subcommand("analyze", "D-vector, indices, K-plot and bootstrap CIs for a CSV sample");
    analyze_cmd->add_option("--input", an.input, "two-column CSV input")->required();
    analyze_cmd->add_flag("--header", an.header, "skip the first row");
    analyze_cmd->add_option("--x-col", an.x_col, "1-based column of x")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--y-col", an.y_col, "1-based column of y")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--bootstrap", an.bootstrap, "bootstrap replicates (0 disables)");
    analyze_cmd->add_option("--levels", an.levels, "confidence levels")->delimiter(',');
    analyze_cmd->add_option("--seed", an.seed, "RNG seed");
    analyze_cmd->add_option("--grid", an.grid, "K-plot grid points");
    analyze_cmd->add_option("--tolerance", an.tolerance, "neutrality tolerance (default 2/sqrt(n))");
    analyze_cmd->add_option("--out-dir", an.out_dir, "output directory")->required();

    SimulateOptions sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo means/SDs of |r|, |tau|, I_AUK, standardized I_AUK");
    simulate_cmd->add_option("--family", sim.family, "bvn|fgm|morgenstern|plackett|bvt5|noise_ratio|triangle|circle")
        ->required();
    simulate_cmd->add_option("--param", sim.param, "rho, gamma, alpha or psi");
    simulate_cmd->add_option("--n", sim.n, "sample size");
    simulate_cmd->add_option("--reps", sim.reps, "replications");
    simulate_cmd->add_option("--seed", sim.seed, "RNG seed");
    simulate_cmd->add_option("--plackett-variant", sim.plackett_variant, "printed|textbook");
    simulate_cmd->add_option("--out", sim.out, "output CSV")->required();

    FgmCurveOptions fgm;
    auto* fgm_cmd = app.add_subcommand("fgm-curve", "AUK(gamma) for the FGM copula over a gamma grid");
    fgm_cmd->add_option("--gamma-min", fgm.gamma_min);
    fgm_cmd->add_option("--gamma-max", fgm.gamma_max);
    fgm_cmd->add_option("--steps", fgm.steps, "number of grid intervals");
    fgm_cmd->add_option("--method", fgm.methods, "closed,quadrature,mc")->delimiter(',');
    fgm_cmd->add_option("--mc-draws", fgm.mc_draws);
    fgm_cmd->add_option("--seed", fgm.seed);
    fgm_cmd->add_option("--out", fgm.out, "output CSV")->required();

    EtaCurveOptions eta_opt;
    auto* eta_cmd = app.add_subcommand("eta-curve", "bivariate-normal calibration table |rho| -> I_AUK");
    eta_cmd->add_option("--rho-grid", eta_opt.grid)->delimiter(',');
    eta_cmd->add_option("--n-fit", eta_opt.n_fit);
    eta_cmd->add_option("--n-eval", eta_opt.n_eval);
    eta_cmd->add_option("--seed", eta_opt.seed);
    eta_cmd->add_option("--out", eta_opt.out, "output CSV")->required();

    SampleOptions smp;
    auto* sample_cmd = app.add_subcommand("sample", "draw a sample and write it as CSV");
    sample_cmd->add_option("--family", smp.family)->required();
    sample_cmd->add_option("--param", smp.param);
    sample_cmd->add_option("--n", smp.n);
    sample_cmd->add_option("--seed", smp.seed);
    sample_cmd->add_option("--plackett-variant", smp.plackett_variant, "printed|textbook");
    sample_cmd->add_option("--out", smp.out, "output CSV")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kSoftwareVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    try {
        if (*analyze_cmd) return analyze(an, err);
        if (*simulate_cmd) return simulate(sim);
        if (*fgm_cmd) return fgm_curve(fgm);
        if (*eta_cmd) return eta(eta_opt);
        if (*sample_cmd) return sample(smp);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputationError;
    }
    return kExitInputError;
}

}  // namespace kplot::cli
