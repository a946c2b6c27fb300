// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <sstream>

#include "twrn/config.hpp"

using namespace twrn;

TEST_CASE("defaults follow the simulation table", "[config]")
{
    const SimConfig cfg;
    CHECK(cfg.L == 16);
    CHECK(cfg.K == 2);
    CHECK(cfg.training_lengths == std::vector<std::size_t>{40, 60, 80});
    CHECK(cfg.snr_grid_db == std::vector<double>{0, 5, 10, 15, 20, 25, 30});
    CHECK(cfg.trials_M == 1000);
    const auto cs = cfg.cosamp_settings();
    CHECK(cs.sparsity_S == 7);
    CHECK(cs.max_iterations == 28);
    CHECK(cs.residual_tolerance == 1e-6);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("parse_config: comments, lists and dotted keys", "[config]")
{
    std::istringstream in(R"(# experiment
L = 8
K=1   # single tap
training_lengths = 16, 24
snr_grid_db = -5, 2.5
trials_M = 3
estimators = cosamp, ls
cosamp.S = 2
cosamp.max_iter = 50
cosamp.tol = 1e-9
master_seed = 18446744073709551615
noiseless = true

output_path = out.csv
)");
    const SimConfig cfg = parse_config(in);
    CHECK(cfg.L == 8);
    CHECK(cfg.K == 1);
    CHECK(cfg.training_lengths == std::vector<std::size_t>{16, 24});
    CHECK(cfg.snr_grid_db == std::vector<double>{-5, 2.5});
    CHECK(cfg.trials_M == 3);
    CHECK(cfg.estimators == std::vector<EstimatorKind>{EstimatorKind::cosamp, EstimatorKind::ls});
    CHECK(cfg.cosamp_settings().sparsity_S == 2);
    CHECK(cfg.cosamp_settings().max_iterations == 50);
    CHECK(cfg.cosamp_settings().residual_tolerance == 1e-9);
    CHECK(cfg.master_seed == 18446744073709551615ULL);
    CHECK(cfg.noiseless);
    CHECK(cfg.output_path == "out.csv");
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("parse_config: malformed input reports the line", "[config]")
{
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_config(in);
    };
    CHECK_THROWS_AS(parse("L = 16\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_WITH(parse("L = 16\nno equals sign\n"), Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THROWS_AS(parse("L = -3\n"), ConfigError);
    CHECK_THROWS_AS(parse("trials_M = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("snr_grid_db = 0,,5\n"), ConfigError);
    CHECK_THROWS_AS(parse("cosamp.tol = nan\n"), ConfigError);
    CHECK_THROWS_AS(parse("estimators = ls, mmse\n"), ConfigError);
    CHECK_THROWS_AS(parse("noiseless = maybe\n"), ConfigError);
    CHECK_THROWS_AS(parse("= 3\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/twrn.cfg"), ConfigError);
}

TEST_CASE("validate: constraint violations", "[config]")
{
    SimConfig cfg;
    cfg.training_lengths = {31};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.training_lengths = {32};
    CHECK_NOTHROW(cfg.validate());

    SimConfig t;
    t.trials_M = 0;
    CHECK_THROWS_AS(t.validate(), ConfigError);

    SimConfig s;
    s.snr_grid_db.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);

    SimConfig k;
    k.K = 17;
    CHECK_THROWS_AS(k.validate(), ConfigError);

    SimConfig c;
    c.cosamp_S = 21;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.estimators = {EstimatorKind::ls};
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("describe_config round-trips through the parser", "[config]")
{
    SimConfig cfg;
    cfg.L = 12;
    cfg.snr_grid_db = {0.1, 7.25};
    cfg.master_seed = 42;
    cfg.cosamp_tol = 3e-7;
    std::ostringstream text;
    for (const auto& line : describe_config(cfg))
        text << line << "\n";
    std::istringstream in(text.str());
    const SimConfig back = parse_config(in);
    CHECK(describe_config(back) == describe_config(cfg));
}

TEST_CASE("format_real uses 15 significant digits", "[config]")
{
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_real(1e-20) == "1e-20");
}
