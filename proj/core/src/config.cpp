// SPDX-License-Identifier: Apache-2.0

#include "twrn/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "twrn/channel.hpp"

namespace twrn {
namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("empty element in list '" + value + "'");
        out.push_back(item);
    }
    if (out.empty())
        throw ConfigError("empty list");
    return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text)
{
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("'" + key + "': expected a nonnegative integer, got '" + text + "'");
    return v;
}

double parse_real(const std::string& key, const std::string& text)
{
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
        throw ConfigError("'" + key + "': expected a finite real number, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "1" || text == "yes")
        return true;
    if (text == "false" || text == "0" || text == "no")
        return false;
    throw ConfigError("'" + key + "': expected true/false, got '" + text + "'");
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F&& fmt)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += fmt(values[i]);
    }
    return out;
}

} // namespace

std::string format_real(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

CosampSettings SimConfig::cosamp_settings() const
{
    const std::size_t S = cosamp_S != 0 ? cosamp_S : composite_sparsity_bound(K);
    CosampSettings s = CosampSettings::for_sparsity(S);
    if (cosamp_max_iter != 0)
        s.max_iterations = cosamp_max_iter;
    s.residual_tolerance = cosamp_tol;
    return s;
}

void SimConfig::validate() const
{
    if (L == 0)
        throw ConfigError("L must be >= 1");
    if (K == 0 || K > L)
        throw ConfigError("K must satisfy 1 <= K <= L");
    if (trials_M == 0)
        throw ConfigError("trials_M must be >= 1");
    if (snr_grid_db.empty())
        throw ConfigError("snr_grid_db must be nonempty");
    if (training_lengths.empty())
        throw ConfigError("training_lengths must be nonempty");
    if (estimators.empty())
        throw ConfigError("estimators must be nonempty");
    for (auto N : training_lengths)
        if (N < 2 * L)
            throw ConfigError("training length " + std::to_string(N) +
                              " leaves least squares underdetermined (need N >= 2L = " +
                              std::to_string(2 * L) + ")");
    if (!(budget.P1 > 0 && budget.P2 > 0 && budget.Pr > 0 && budget.var_h1 > 0 && budget.var_h2 > 0))
        throw ConfigError("powers and channel variances must be positive");
    if (!(cosamp_tol >= 0))
        throw ConfigError("cosamp.tol must be >= 0");
    if (std::find(estimators.begin(), estimators.end(), EstimatorKind::cosamp) != estimators.end()) {
        const auto s = cosamp_settings();
        if (3 * s.sparsity_S > 4 * L - 2)
            throw ConfigError("cosamp.S must satisfy 3S <= 4L - 2");
        if (s.max_iterations == 0)
            throw ConfigError("cosamp.max_iter must be >= 1");
    }
}

void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "L") {
        cfg.L = parse_unsigned(key, value);
    } else if (key == "K") {
        cfg.K = parse_unsigned(key, value);
    } else if (key == "training_lengths") {
        cfg.training_lengths.clear();
        for (const auto& item : split_list(value))
            cfg.training_lengths.push_back(parse_unsigned(key, item));
    } else if (key == "snr_grid_db") {
        cfg.snr_grid_db.clear();
        for (const auto& item : split_list(value))
            cfg.snr_grid_db.push_back(parse_real(key, item));
    } else if (key == "trials_M") {
        cfg.trials_M = parse_unsigned(key, value);
    } else if (key == "P1") {
        cfg.budget.P1 = parse_real(key, value);
    } else if (key == "P2") {
        cfg.budget.P2 = parse_real(key, value);
    } else if (key == "Pr") {
        cfg.budget.Pr = parse_real(key, value);
    } else if (key == "var_h1") {
        cfg.budget.var_h1 = parse_real(key, value);
    } else if (key == "var_h2") {
        cfg.budget.var_h2 = parse_real(key, value);
    } else if (key == "estimators") {
        cfg.estimators.clear();
        for (const auto& item : split_list(value)) {
            EstimatorKind kind;
            try {
                kind = estimator_from_string(item);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("'estimators': ") + e.what());
            }
            if (std::find(cfg.estimators.begin(), cfg.estimators.end(), kind) == cfg.estimators.end())
                cfg.estimators.push_back(kind);
        }
    } else if (key == "cosamp.S") {
        cfg.cosamp_S = parse_unsigned(key, value);
    } else if (key == "cosamp.max_iter") {
        cfg.cosamp_max_iter = parse_unsigned(key, value);
    } else if (key == "cosamp.tol") {
        cfg.cosamp_tol = parse_real(key, value);
    } else if (key == "master_seed") {
        cfg.master_seed = parse_unsigned(key, value);
    } else if (key == "output_path") {
        cfg.output_path = value;
    } else if (key == "timing_snr_db") {
        cfg.timing_snr_db = parse_real(key, value);
    } else if (key == "threads") {
        cfg.threads = parse_unsigned(key, value);
    } else if (key == "noiseless") {
        cfg.noiseless = parse_bool(key, value);
    } else if (key == "record_timing") {
        cfg.record_timing = parse_bool(key, value);
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

SimConfig parse_config(std::istream& in, SimConfig base)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": missing key");
        try {
            apply_setting(base, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

SimConfig load_config(const std::string& path, SimConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, std::move(base));
}

std::vector<std::string> describe_config(const SimConfig& cfg)
{
    const auto cs = cfg.cosamp_settings();
    auto num = [](std::size_t v) { return std::to_string(v); };
    auto est = [](EstimatorKind k) { return std::string(to_string(k)); };
    return {
        "L = " + num(cfg.L),
        "K = " + num(cfg.K),
        "training_lengths = " + join(cfg.training_lengths, num),
        "snr_grid_db = " + join(cfg.snr_grid_db, format_real),
        "trials_M = " + num(cfg.trials_M),
        "P1 = " + format_real(cfg.budget.P1),
        "P2 = " + format_real(cfg.budget.P2),
        "Pr = " + format_real(cfg.budget.Pr),
        "var_h1 = " + format_real(cfg.budget.var_h1),
        "var_h2 = " + format_real(cfg.budget.var_h2),
        "estimators = " + join(cfg.estimators, est),
        "cosamp.S = " + num(cs.sparsity_S),
        "cosamp.max_iter = " + num(cs.max_iterations),
        "cosamp.tol = " + format_real(cs.residual_tolerance),
        "master_seed = " + std::to_string(cfg.master_seed),
        "timing_snr_db = " + format_real(cfg.timing_snr_db),
        "noiseless = " + std::string(cfg.noiseless ? "true" : "false"),
        "record_timing = " + std::string(cfg.record_timing ? "true" : "false"),
    };
}

} // namespace twrn
