// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"
#include "twrn/sim.hpp"

using namespace twrn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SimConfig small_config()
{
    SimConfig cfg;
    cfg.training_lengths = {40};
    cfg.snr_grid_db = {0, 10};
    cfg.trials_M = 20;
    cfg.threads = 1;
    return cfg;
}

} // namespace

TEST_CASE("mse: direct substitution", "[sim]")
{
    const ComplexVector truth = ComplexVector::Zero(31);
    CHECK(mse(truth, {truth, truth}) == 0.0);

    ComplexVector one = truth;
    one(4) = 0.31;
    CHECK_THAT(mse(truth, {one}), WithinAbs(0.31 * 0.31 / 31, 1e-15));

    ComplexVector e1 = truth, e3 = truth;
    e1(0) = 1.0;
    e3(1) = std::sqrt(3.0);
    CHECK_THAT(mse(truth, {e1, e3}), WithinAbs(4.0 / 62.0, 1e-15));

    CHECK_THROWS_AS(mse(truth, {}), std::invalid_argument);
    CHECK_THROWS_AS(mse(truth, {ComplexVector::Zero(30)}), std::invalid_argument);
}

TEST_CASE("mse: concatenation is the trial-weighted mean", "[sim][property]")
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexVector truth = oracle::random_vector(31, rng);
        std::vector<ComplexVector> a, b;
        const std::size_t na = 1 + rng() % 7, nb = 1 + rng() % 7;
        for (std::size_t i = 0; i < na; ++i)
            a.push_back(oracle::random_vector(31, rng));
        for (std::size_t i = 0; i < nb; ++i)
            b.push_back(oracle::random_vector(31, rng));
        std::vector<ComplexVector> all = a;
        all.insert(all.end(), b.begin(), b.end());
        const double weighted = (na * mse(truth, a) + nb * mse(truth, b)) / double(na + nb);
        CHECK_THAT(mse(truth, all), WithinRel(weighted, 1e-12));
    }
}

TEST_CASE("run_trial: deterministic per (seed, N, snr, index)", "[sim]")
{
    const SimConfig cfg = small_config();
    const TrialResult a = run_trial(cfg, 40, 10.0, 3);
    const TrialResult b = run_trial(cfg, 40, 10.0, 3);
    REQUIRE(a.estimates.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.estimates[i].sq_error_b == b.estimates[i].sq_error_b);
        CHECK(a.estimates[i].sq_error_c == b.estimates[i].sq_error_c);
    }
    const TrialResult other = run_trial(cfg, 40, 10.0, 4);
    CHECK(other.estimates[0].sq_error_b != a.estimates[0].sq_error_b);
    CHECK_THROWS_AS(run_trial(cfg, 40, 10.0, 20), std::invalid_argument);
}

TEST_CASE("run_trial: noiseless LS and oracle are exact", "[sim]")
{
    SimConfig cfg = small_config();
    cfg.noiseless = true;
    for (std::size_t i = 0; i < cfg.trials_M; ++i) {
        const TrialResult r = run_trial(cfg, 40, 0.0, i);
        CHECK(r.noise_variance == 0.0);
        for (const auto& e : r.estimates) {
            if (e.estimator == EstimatorKind::cosamp)
                continue;
            CHECK(e.sq_error_b + e.sq_error_c <= 1e-18);
            CHECK_FALSE(e.failed);
        }
    }
}

TEST_CASE("run_trial: LS error shrinks from 0 dB to 30 dB", "[sim]")
{
    SimConfig cfg = small_config();
    cfg.estimators = {EstimatorKind::ls};
    int smaller = 0;
    for (std::size_t i = 0; i < cfg.trials_M; ++i) {
        const auto lo = run_trial(cfg, 40, 0.0, i).estimates[0];
        const auto hi = run_trial(cfg, 40, 30.0, i).estimates[0];
        smaller += (hi.sq_error_b + hi.sq_error_c) < (lo.sq_error_b + lo.sq_error_c);
    }
    CHECK(smaller == static_cast<int>(cfg.trials_M));
}

TEST_CASE("mse_sweep: M = 1 equals the single trial", "[sim]")
{
    SimConfig cfg = small_config();
    cfg.trials_M = 1;
    cfg.snr_grid_db = {15};
    const auto curves = mse_sweep(cfg);
    const TrialResult t = run_trial(cfg, 40, 15, 0);
    REQUIRE(curves.size() == 3);
    for (const auto& c : curves) {
        REQUIRE(c.points.size() == 1);
        const auto it = std::find_if(t.estimates.begin(), t.estimates.end(),
                                     [&](const EstimatorTrial& e) { return e.estimator == c.estimator; });
        CHECK(c.points[0].mse_b == it->sq_error_b / 31.0);
        CHECK(c.points[0].mse_c == it->sq_error_c / 31.0);
        CHECK(c.points[0].trials + c.points[0].failures == 1);
    }
}

TEST_CASE("mse_sweep: curve layout, ordering and failure accounting", "[sim]")
{
    SimConfig cfg = small_config();
    cfg.training_lengths = {60, 40};
    cfg.snr_grid_db = {20, 0};
    cfg.estimators = {EstimatorKind::cosamp, EstimatorKind::ls};
    const auto curves = mse_sweep(cfg);
    REQUIRE(curves.size() == 4);
    CHECK(curves[0].estimator == EstimatorKind::ls);
    CHECK(curves[0].N == 40);
    CHECK(curves[1].N == 60);
    CHECK(curves[2].estimator == EstimatorKind::cosamp);
    for (const auto& c : curves) {
        REQUIRE(c.points.size() == 2);
        CHECK(c.points[0].snr_db == 0);
        CHECK(c.points[1].snr_db == 20);
        for (const auto& p : c.points) {
            CHECK(p.trials + p.failures == cfg.trials_M);
            CHECK(p.mse_b >= 0);
            CHECK(p.mse_c >= 0);
        }
    }
}

TEST_CASE("mse_sweep: serial and parallel CSVs are byte-identical", "[sim]")
{
    SimConfig serial = small_config();
    serial.trials_M = 40;
    SimConfig parallel = serial;
    parallel.threads = 4;

    std::ostringstream a, b;
    write_mse_csv(a, serial, mse_sweep(serial));
    write_mse_csv(b, parallel, mse_sweep(parallel));
    CHECK(a.str() == b.str());
    CHECK(a.str().find("estimator,N,snr_db,mse_b,mse_c,mean_seconds,trials,failures\n") != std::string::npos);
    CHECK(a.str().rfind("# ", 0) == 0);
}

TEST_CASE("timing_sweep: one sample per cell at M = 1, under 50 ms", "[sim]")
{
    SimConfig cfg;
    cfg.trials_M = 1;
    cfg.estimators = {EstimatorKind::ls, EstimatorKind::cosamp};
    const auto rows = timing_sweep(cfg);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.samples == 1);
        CHECK(r.snr_db == 15.0);
        CHECK(r.mean_elapsed_seconds > 0.0);
        CHECK(r.mean_elapsed_seconds < 0.05);
    }
    std::ostringstream csv;
    write_timing_csv(csv, cfg, rows);
    CHECK(csv.str().find("estimator,N,snr_db,mean_seconds,samples\n") != std::string::npos);
}

TEST_CASE("run_exact_recovery: default instance passes", "[sim]")
{
    SimConfig cfg;
    cfg.threads = 1;
    const auto r = run_exact_recovery(cfg, 50);
    CHECK(r.instances == 50);
    CHECK(r.passed());
}

TEST_CASE("parallel_for: visits every index once and rethrows", "[sim]")
{
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                     if (i == 7)
                                         throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
