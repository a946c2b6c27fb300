// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration and its flat key=value file format:
//
//   # comment
//   L = 16
//   training_lengths = 40, 60, 80
//   cosamp.S = 7
//
// Unknown keys and malformed values are errors.

#ifndef TWRN_CONFIG_HPP
#define TWRN_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "twrn/estimators.hpp"
#include "twrn/link.hpp"

namespace twrn {

class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct SimConfig
{
    std::size_t L = 16;
    std::size_t K = 2;
    std::vector<std::size_t> training_lengths{40, 60, 80};
    std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30};
    std::size_t trials_M = 1000;
    RelayBudget budget;
    std::vector<EstimatorKind> estimators{EstimatorKind::ls, EstimatorKind::oracle, EstimatorKind::cosamp};
    /// 0 selects the composite sparsity bound K(K+1)/2 + K^2.
    std::size_t cosamp_S = 0;
    /// 0 selects min(4S, 100).
    std::size_t cosamp_max_iter = 0;
    double cosamp_tol = 1e-6;
    std::uint64_t master_seed = 1;
    std::string output_path;
    double timing_snr_db = 15.0;
    /// 0 selects std::thread::hardware_concurrency().
    std::size_t threads = 0;
    bool noiseless = false;
    /// Emit measured wall times in the MSE CSV (makes it run-dependent).
    bool record_timing = false;

    CosampSettings cosamp_settings() const;

    /// Throws ConfigError on any violated constraint.
    void validate() const;
};

/// Applies key=value lines on top of `base`.
SimConfig parse_config(std::istream& in, SimConfig base = {});
SimConfig load_config(const std::string& path, SimConfig base = {});

/// Sets a single key; shared by the file parser and CLI overrides.
void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value);

/// One "key = value" line per setting, in a fixed order, fully resolved.
std::vector<std::string> describe_config(const SimConfig& cfg);

/// Decimal text with 15 significant digits ("%.15g").
std::string format_real(double value);

} // namespace twrn

#endif
