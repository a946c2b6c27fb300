// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "twrn/config.hpp"
#include "twrn/link.hpp"
#include "twrn/ric.hpp"
#include "twrn/rng.hpp"
#include "twrn/sim.hpp"

namespace twrn::cli {
namespace {

struct GlobalOptions
{
    std::string config = "default";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> threads;
    std::string out;
    bool quiet = false;
};

struct RicOptions
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t order = 2;
    std::size_t samples = 10000;
};

SimConfig resolve_config(const GlobalOptions& g)
{
    SimConfig cfg;
    if (g.config != "default")
        cfg = load_config(g.config);
    if (g.seed)
        cfg.master_seed = *g.seed;
    if (g.trials)
        cfg.trials_M = *g.trials;
    if (g.threads)
        cfg.threads = *g.threads;
    if (!g.out.empty())
        cfg.output_path = g.out;
    cfg.validate();
    return cfg;
}

/// Writes `text` to cfg.output_path, or to `out` when no path is set.
void emit(const SimConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("cannot open output file '" + cfg.output_path + "'");
    file << text;
    if (!file)
        throw std::runtime_error("failed writing '" + cfg.output_path + "'");
}

int run_mse(const SimConfig& cfg, const GlobalOptions& g, std::ostream& out)
{
    const auto curves = mse_sweep(cfg);
    std::ostringstream csv;
    write_mse_csv(csv, cfg, curves);
    emit(cfg, csv.str(), out);
    if (!g.quiet && !cfg.output_path.empty())
        out << "wrote " << curves.size() << " curves to " << cfg.output_path << "\n";
    return kExitOk;
}

int run_timing(const SimConfig& cfg, const GlobalOptions& g, std::ostream& out)
{
    const auto rows = timing_sweep(cfg);
    std::ostringstream csv;
    write_timing_csv(csv, cfg, rows);
    emit(cfg, csv.str(), out);
    if (!g.quiet && !cfg.output_path.empty())
        out << "wrote " << rows.size() << " timing rows to " << cfg.output_path << "\n";
    return kExitOk;
}

/// rows x cols partial Toeplitz matrix cut from a random sequence.
ComplexMatrix random_toeplitz(std::size_t rows, std::size_t cols, RandomStream& rng)
{
    const ComplexVector seq = complex_normal_vector(rng, rows + cols - 1, 1.0);
    ComplexMatrix T(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            T(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                seq(static_cast<Eigen::Index>(i + cols - 1 - j));
    return T;
}

int run_ric(const SimConfig& cfg, const GlobalOptions& g, const RicOptions& opt, std::ostream& out)
{
    RandomStream rng(derive_seed({cfg.master_seed, opt.rows, opt.cols, opt.order}));
    ComplexMatrix A;
    std::string source;
    if (opt.rows > 0 || opt.cols > 0) {
        if (opt.rows == 0 || opt.cols == 0)
            throw ConfigError("ric: --rows and --cols must be given together");
        A = random_toeplitz(opt.rows, opt.cols, rng);
        source = "random partial Toeplitz";
    } else {
        const std::size_t N = cfg.training_lengths.front();
        const TrainingPair tp = gen_training_pair(N, rng);
        A = build_measurement(tp.x1, tp.x2, cfg.L, 1.0).X;
        source = "training matrix X = [X1 X2], N = " + std::to_string(N);
    }

    const RicReport report = ric_bruteforce(A, opt.order);
    const RipSampleCheck check = sample_rip(A, report, opt.samples, rng);

    const ComplexMatrix An = normalize_columns(A);
    const ComplexMatrix sub = select_columns(An, report.extremal_subset);
    const double attained = (sub * report.extremal_vector).squaredNorm();
    const double target = report.extremal_eigenvalue >= 1.0 ? 1.0 + report.delta : 1.0 - report.delta;

    std::ostringstream text;
    text << "# twrn-sim ric\n";
    text << "matrix = " << source << "\n";
    text << "rows = " << A.rows() << "\n";
    text << "cols = " << A.cols() << "\n";
    text << "order_S = " << report.order_S << "\n";
    text << "delta = " << format_real(report.delta) << "\n";
    text << "extremal_subset = ";
    for (std::size_t i = 0; i < report.extremal_subset.size(); ++i)
        text << (i ? "," : "") << report.extremal_subset[i];
    text << "\n";
    text << "subsets_examined = " << report.subsets_examined << "\n";
    text << "extremal_eigenvalue = " << format_real(report.extremal_eigenvalue) << "\n";
    text << "attainment_gap = " << format_real(std::abs(attained - target)) << "\n";
    text << "sampled_vectors = " << check.samples << "\n";
    text << "max_band_violation = " << format_real(check.max_violation) << "\n";
    text << "max_sampled_deviation = " << format_real(check.max_deviation) << "\n";
    emit(cfg, text.str(), out);
    if (!g.quiet && !cfg.output_path.empty())
        out << text.str();
    return kExitOk;
}

int run_selftest(const SimConfig& cfg, const GlobalOptions& g, std::ostream& out)
{
    const ExactRecoveryReport r = run_exact_recovery(cfg, 200);
    if (!g.quiet) {
        out << "noiseless exact recovery, " << r.instances << " instances, N = "
            << cfg.training_lengths.front() << ", L = " << cfg.L << ", K = " << cfg.K << "\n";
        out << "  cosamp  " << r.cosamp_ok << "/" << r.instances
            << " within 1e-6 (worst " << format_real(r.worst_cosamp) << ")\n";
        out << "  ls      " << r.ls_ok << "/" << r.instances
            << " within 1e-9 (worst " << format_real(r.worst_ls) << ")\n";
        out << "  oracle  " << r.oracle_ok << "/" << r.instances
            << " within 1e-9 (worst " << format_real(r.worst_oracle) << ")\n";
        out << (r.passed() ? "PASS" : "FAIL") << " (" << format_real(r.elapsed_seconds) << " s)\n";
    }
    return r.passed() ? kExitOk : kExitRuntime;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sparse channel estimation for amplify-and-forward two-way relay networks"};
    app.name("twrn-sim");
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    RicOptions ric;
    app.add_option("--config", g.config, "key=value config file, or 'default'");
    app.add_option("--seed", g.seed, "master seed (u64)");
    app.add_option("--out", g.out, "output path (stdout when omitted)");
    app.add_option("--trials", g.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
    app.add_flag("--quiet", g.quiet, "suppress progress and summaries");

    auto* mse_cmd = app.add_subcommand("mse", "MSE versus SNR sweep (CSV)");
    auto* timing_cmd = app.add_subcommand("timing", "mean estimation wall time per training length (CSV)");
    auto* ric_cmd = app.add_subcommand("ric", "brute-force restricted isometry constant of a training matrix");
    ric_cmd->add_option("--rows", ric.rows, "rows of a random partial Toeplitz matrix");
    ric_cmd->add_option("--cols", ric.cols, "columns of a random partial Toeplitz matrix");
    ric_cmd->add_option("--order", ric.order, "sparsity order S")->check(CLI::PositiveNumber);
    ric_cmd->add_option("--samples", ric.samples, "random sparse vectors for the direct band check");
    auto* selftest_cmd = app.add_subcommand("selftest", "noiseless exact-recovery check");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return kExitUsage;
    }

    SimConfig cfg;
    try {
        cfg = resolve_config(g);
    } catch (const std::invalid_argument& e) {
        err << "twrn-sim: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (mse_cmd->parsed())
            return run_mse(cfg, g, out);
        if (timing_cmd->parsed())
            return run_timing(cfg, g, out);
        if (ric_cmd->parsed())
            return run_ric(cfg, g, ric, out);
        if (selftest_cmd->parsed())
            return run_selftest(cfg, g, out);
    } catch (const ConfigError& e) {
        err << "twrn-sim: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "twrn-sim: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace twrn::cli
