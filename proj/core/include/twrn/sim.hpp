// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo harness: per-trial synthesis and estimation, MSE-vs-SNR
// sweeps, runtime sweeps and CSV emission. Every trial draws from its own
// stream derived from (master_seed, N, snr_db, trial_index), and results are
// reduced in trial order, so output does not depend on the thread count.

#ifndef TWRN_SIM_HPP
#define TWRN_SIM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "twrn/config.hpp"
#include "twrn/estimators.hpp"
#include "twrn/linalg.hpp"

namespace twrn {

/// (1 / (M * len)) * sum_m ||truth - estimate_m||^2.
double mse(const ComplexVector& truth, const std::vector<ComplexVector>& estimates);

struct EstimatorTrial
{
    EstimatorKind estimator = EstimatorKind::ls;
    double sq_error_b = 0.0;
    double sq_error_c = 0.0;
    double elapsed_seconds = 0.0;
    bool failed = false;
};

struct TrialResult
{
    std::vector<EstimatorTrial> estimates;  // cfg.estimators order
    double theta_energy = 0.0;              // ||theta||^2
    double noise_variance = 0.0;
    double alpha = 0.0;
};

/// Stream seed for one trial.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t N, double snr_db,
                         std::size_t trial_index);

TrialResult run_trial(const SimConfig& cfg, std::size_t N, double snr_db, std::size_t trial_index);

struct CurvePoint
{
    double snr_db = 0.0;
    double mse_b = 0.0;
    double mse_c = 0.0;
    double mean_elapsed_seconds = 0.0;  // over successful trials
    std::size_t trials = 0;             // successful
    std::size_t failures = 0;
};

struct MseCurve
{
    EstimatorKind estimator = EstimatorKind::ls;
    std::size_t N = 0;
    std::vector<CurvePoint> points;
};

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). Exceptions from body are rethrown on the calling thread.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

/// Curves sorted by (estimator, N, snr).
std::vector<MseCurve> mse_sweep(const SimConfig& cfg);

struct TimingRow
{
    EstimatorKind estimator = EstimatorKind::ls;
    std::size_t N = 0;
    double snr_db = 0.0;
    double mean_elapsed_seconds = 0.0;
    std::size_t samples = 0;
};

/// Mean estimation wall time per (estimator, N) at cfg.timing_snr_db; runs
/// serially and excludes synthesis.
std::vector<TimingRow> timing_sweep(const SimConfig& cfg);

struct ExactRecoveryReport
{
    std::size_t instances = 0;
    std::size_t cosamp_ok = 0;
    std::size_t ls_ok = 0;
    std::size_t oracle_ok = 0;
    double worst_cosamp = 0.0;
    double worst_ls = 0.0;
    double worst_oracle = 0.0;
    double elapsed_seconds = 0.0;

    bool passed() const
    {
        return 100 * cosamp_ok >= 99 * instances && ls_ok == instances && oracle_ok == instances;
    }
};

/// Noiseless recovery at the first configured training length: CoSaMP
/// relative error <= 1e-6 counts as success, LS/oracle need <= 1e-9.
ExactRecoveryReport run_exact_recovery(const SimConfig& cfg, std::size_t instances);

/// Header comments shared by every output file.
void write_header(std::ostream& out, const SimConfig& cfg, const std::string& kind);

/// estimator,N,snr_db,mse_b,mse_c,mean_seconds,trials,failures
void write_mse_csv(std::ostream& out, const SimConfig& cfg, const std::vector<MseCurve>& curves);

/// estimator,N,snr_db,mean_seconds,samples
void write_timing_csv(std::ostream& out, const SimConfig& cfg, const std::vector<TimingRow>& rows);

} // namespace twrn

#endif
