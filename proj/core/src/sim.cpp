// SPDX-License-Identifier: Apache-2.0

#include "twrn/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "twrn/channel.hpp"
#include "twrn/link.hpp"
#include "twrn/rng.hpp"

namespace twrn {

double mse(const ComplexVector& truth, const std::vector<ComplexVector>& estimates)
{
    if (estimates.empty())
        throw std::invalid_argument("mse: estimate list is empty");
    if (truth.size() == 0)
        throw std::invalid_argument("mse: true vector is empty");
    double total = 0.0;
    for (const auto& e : estimates) {
        if (e.size() != truth.size())
            throw std::invalid_argument("mse: estimate length differs from the true vector");
        total += (truth - e).squaredNorm();
    }
    return total / (static_cast<double>(estimates.size()) * static_cast<double>(truth.size()));
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t N, double snr_db, std::size_t trial_index)
{
    return derive_seed({master_seed, static_cast<std::uint64_t>(N), std::bit_cast<std::uint64_t>(snr_db),
                        static_cast<std::uint64_t>(trial_index)});
}

TrialResult run_trial(const SimConfig& cfg, std::size_t N, double snr_db, std::size_t trial_index)
{
    if (trial_index >= cfg.trials_M)
        throw std::invalid_argument("run_trial: trial_index must be < trials_M");

    RandomStream rng(trial_seed(cfg.master_seed, N, snr_db, trial_index));
    const SparseChannel h1 = gen_sparse_channel(cfg.L, cfg.K, rng);
    const SparseChannel h2 = gen_sparse_channel(cfg.L, cfg.K, rng);
    const CompositeChannel channels = compose_channels(h1, h2);
    const TrainingPair training = gen_training_pair(N, rng);

    MeasurementModel model = build_measurement(training.x1, training.x2, cfg.L, 1.0);
    const double effective_snr = cfg.noiseless ? kNoiseless : snr_db;
    const auto op = relay_operating_point(cfg.budget, (model.X * channels.theta).squaredNorm(),
                                          h1.energy(), N, cfg.L, effective_snr);
    model.alpha = op.alpha;
    const ReceivedSignal rx = synthesize_received(model, channels, h1, effective_snr, rng);

    TrialResult result;
    result.theta_energy = channels.theta.squaredNorm();
    result.noise_variance = rx.noise_variance;
    result.alpha = model.alpha;

    const Eigen::Index half = static_cast<Eigen::Index>(2 * cfg.L - 1);
    const auto cosamp_cfg = cfg.cosamp_settings();
    for (auto kind : cfg.estimators) {
        EstimatorTrial t;
        t.estimator = kind;
        try {
            EstimatorOutput out;
            switch (kind) {
            case EstimatorKind::ls: out = ls_estimate(model, rx.y); break;
            case EstimatorKind::oracle: out = oracle_estimate(model, rx.y, channels.support); break;
            case EstimatorKind::cosamp: out = cosamp(model, rx.y, cosamp_cfg); break;
            }
            t.sq_error_b = (channels.b - out.theta_hat.head(half)).squaredNorm();
            t.sq_error_c = (channels.c - out.theta_hat.tail(half)).squaredNorm();
            t.elapsed_seconds = out.elapsed_seconds;
        } catch (const std::exception&) {
            // Counted as the all-zero estimate.
            t.failed = true;
            t.sq_error_b = channels.b.squaredNorm();
            t.sq_error_c = channels.c.squaredNorm();
            t.elapsed_seconds = 0.0;
        }
        result.estimates.push_back(t);
    }
    return result;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

std::vector<MseCurve> mse_sweep(const SimConfig& cfg)
{
    cfg.validate();

    std::vector<EstimatorKind> order = cfg.estimators;
    std::sort(order.begin(), order.end());

    std::vector<MseCurve> curves;
    for (auto kind : order)
        for (auto N : cfg.training_lengths)
            curves.push_back({kind, N, {}});

    const double len = static_cast<double>(2 * cfg.L - 1);
    for (auto N : cfg.training_lengths) {
        for (double snr : cfg.snr_grid_db) {
            std::vector<TrialResult> trials(cfg.trials_M);
            parallel_for(cfg.trials_M, cfg.threads,
                         [&](std::size_t i) { trials[i] = run_trial(cfg, N, snr, i); });

            for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
                double sum_b = 0.0, sum_c = 0.0, sum_t = 0.0;
                std::size_t ok = 0, failed = 0;
                for (const auto& tr : trials) {
                    const auto& est = tr.estimates[e];
                    sum_b += est.sq_error_b;
                    sum_c += est.sq_error_c;
                    if (est.failed) {
                        ++failed;
                    } else {
                        ++ok;
                        sum_t += est.elapsed_seconds;
                    }
                }
                CurvePoint p;
                p.snr_db = snr;
                p.mse_b = sum_b / (static_cast<double>(cfg.trials_M) * len);
                p.mse_c = sum_c / (static_cast<double>(cfg.trials_M) * len);
                p.mean_elapsed_seconds = ok > 0 ? sum_t / static_cast<double>(ok) : 0.0;
                p.trials = ok;
                p.failures = failed;

                auto it = std::find_if(curves.begin(), curves.end(), [&](const MseCurve& c) {
                    return c.estimator == cfg.estimators[e] && c.N == N;
                });
                it->points.push_back(p);
            }
        }
    }

    for (auto& c : curves)
        std::stable_sort(c.points.begin(), c.points.end(),
                         [](const CurvePoint& a, const CurvePoint& b) { return a.snr_db < b.snr_db; });
    std::stable_sort(curves.begin(), curves.end(), [](const MseCurve& a, const MseCurve& b) {
        return a.estimator != b.estimator ? a.estimator < b.estimator : a.N < b.N;
    });
    return curves;
}

std::vector<TimingRow> timing_sweep(const SimConfig& cfg)
{
    cfg.validate();
    std::vector<EstimatorKind> order = cfg.estimators;
    std::sort(order.begin(), order.end());

    std::vector<TimingRow> rows;
    for (auto kind : order)
        for (auto N : cfg.training_lengths)
            rows.push_back({kind, N, cfg.timing_snr_db, 0.0, 0});

    for (auto N : cfg.training_lengths) {
        for (std::size_t i = 0; i < cfg.trials_M; ++i) {
            const TrialResult tr = run_trial(cfg, N, cfg.timing_snr_db, i);
            for (const auto& est : tr.estimates) {
                if (est.failed)
                    continue;
                auto it = std::find_if(rows.begin(), rows.end(), [&](const TimingRow& r) {
                    return r.estimator == est.estimator && r.N == N;
                });
                it->mean_elapsed_seconds += est.elapsed_seconds;
                ++it->samples;
            }
        }
    }
    for (auto& r : rows)
        if (r.samples > 0)
            r.mean_elapsed_seconds /= static_cast<double>(r.samples);
    return rows;
}

ExactRecoveryReport run_exact_recovery(const SimConfig& cfg, std::size_t instances)
{
    SimConfig run = cfg;
    run.noiseless = true;
    run.trials_M = instances;
    run.estimators = {EstimatorKind::ls, EstimatorKind::oracle, EstimatorKind::cosamp};
    run.validate();
    const std::size_t N = run.training_lengths.front();

    const auto start = std::chrono::steady_clock::now();
    std::vector<TrialResult> trials(instances);
    parallel_for(instances, run.threads, [&](std::size_t i) { trials[i] = run_trial(run, N, 0.0, i); });

    ExactRecoveryReport report;
    report.instances = instances;
    for (const auto& tr : trials) {
        const double scale = std::sqrt(tr.theta_energy);
        for (const auto& est : tr.estimates) {
            const double rel = est.failed ? std::numeric_limits<double>::infinity()
                                          : std::sqrt(est.sq_error_b + est.sq_error_c) / scale;
            switch (est.estimator) {
            case EstimatorKind::ls:
                report.worst_ls = std::max(report.worst_ls, rel);
                report.ls_ok += rel <= 1e-9;
                break;
            case EstimatorKind::oracle:
                report.worst_oracle = std::max(report.worst_oracle, rel);
                report.oracle_ok += rel <= 1e-9;
                break;
            case EstimatorKind::cosamp:
                report.worst_cosamp = std::max(report.worst_cosamp, rel);
                report.cosamp_ok += rel <= 1e-6;
                break;
            }
        }
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void write_header(std::ostream& out, const SimConfig& cfg, const std::string& kind)
{
    out << "# twrn-sim " << kind << "\n";
    for (const auto& line : describe_config(cfg))
        out << "# " << line << "\n";
    out << "# training: ||x_i||^2 = N (unit power per symbol), i.i.d. CN(0,1) then rescaled\n";
    out << "# snr: 10log10(||alpha X theta||^2 / E||n||^2) at T1, "
           "E||n||^2 = sigma^2 (alpha^2 ||h1||^2 (N+L-1) + N+2L-2)\n";
    out << "# relay: alpha from relay power budget with var_n = sigma^2 (solved jointly)\n";
    out << "# mse: sum_m ||v - v_m||^2 / (M (2L-1)); failed trials count as the zero estimate\n";
}

void write_mse_csv(std::ostream& out, const SimConfig& cfg, const std::vector<MseCurve>& curves)
{
    write_header(out, cfg, "mse");
    out << "estimator,N,snr_db,mse_b,mse_c,mean_seconds,trials,failures\n";
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            out << to_string(c.estimator) << ',' << c.N << ',' << format_real(p.snr_db) << ','
                << format_real(p.mse_b) << ',' << format_real(p.mse_c) << ','
                << (cfg.record_timing ? format_real(p.mean_elapsed_seconds) : std::string("nan")) << ','
                << p.trials << ',' << p.failures << '\n';
        }
    }
}

void write_timing_csv(std::ostream& out, const SimConfig& cfg, const std::vector<TimingRow>& rows)
{
    write_header(out, cfg, "timing");
    out << "estimator,N,snr_db,mean_seconds,samples\n";
    for (const auto& r : rows)
        out << to_string(r.estimator) << ',' << r.N << ',' << format_real(r.snr_db) << ','
            << format_real(r.mean_elapsed_seconds) << ',' << r.samples << '\n';
}

} // namespace twrn
