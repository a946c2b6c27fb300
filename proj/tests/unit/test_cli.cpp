// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using twrn::cli::cli_main;

namespace {

struct Run
{
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "twrn_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::map<std::string, std::string> key_values(const std::string& text)
{
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos)
            kv[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return kv;
}

} // namespace

TEST_CASE("cli: usage errors exit 1", "[cli]")
{
    CHECK(run({}).code == twrn::cli::kExitUsage);
    CHECK(run({"--bogus", "mse"}).code == twrn::cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == twrn::cli::kExitUsage);
    CHECK(run({"--trials", "0", "mse"}).code == twrn::cli::kExitUsage);

    const fs::path bad = scratch("bad.cfg");
    std::ofstream(bad) << "L = 16\nnot a setting\n";
    const Run r = run({"--config", bad.string(), "mse"});
    CHECK(r.code == twrn::cli::kExitUsage);
    CHECK(r.err.find("line 2") != std::string::npos);

    CHECK(run({"--config", scratch("missing.cfg").string(), "mse"}).code == twrn::cli::kExitUsage);
}

TEST_CASE("cli: --help exits 0", "[cli]")
{
    const Run r = run({"--help"});
    CHECK(r.code == twrn::cli::kExitOk);
    CHECK(r.out.find("selftest") != std::string::npos);
}

TEST_CASE("cli: mse output is byte-identical across runs and thread counts", "[cli]")
{
    const fs::path cfg = scratch("small.cfg");
    std::ofstream(cfg) << "training_lengths = 40\nsnr_grid_db = 0, 20\n";
    const fs::path a = scratch("a.csv"), b = scratch("b.csv");
    REQUIRE(run({"--config", cfg.string(), "--seed", "7", "--trials", "5", "--threads", "1", "--out",
                 a.string(), "--quiet", "mse"})
                .code == 0);
    REQUIRE(run({"--config", cfg.string(), "--seed", "7", "--trials", "5", "--threads", "3", "--out",
                 b.string(), "--quiet", "mse"})
                .code == 0);
    const std::string first = slurp(a);
    CHECK(first == slurp(b));
    CHECK(first.find("master_seed = 7") != std::string::npos);
    // 3 estimators x 1 length x 2 SNRs
    std::istringstream lines(first);
    std::string line;
    int data = 0;
    while (std::getline(lines, line))
        data += !line.empty() && line[0] != '#' && line.rfind("estimator,", 0) != 0;
    CHECK(data == 6);

    const Run other = run({"--config", cfg.string(), "--seed", "8", "--trials", "5", "mse"});
    CHECK(other.code == 0);
    CHECK(other.out != first);
}

TEST_CASE("cli: ric on a random 6x10 matrix", "[cli]")
{
    const Run r = run({"--quiet", "ric", "--rows", "6", "--cols", "10", "--order", "2"});
    REQUIRE(r.code == 0);
    const auto kv = key_values(r.out);
    CHECK(kv.at("rows") == "6");
    CHECK(kv.at("cols") == "10");
    CHECK(kv.at("subsets_examined") == "45");
    const double delta = std::stod(kv.at("delta"));
    CHECK(delta > 0.0);
    CHECK(std::stod(kv.at("max_band_violation")) <= 1e-9);
    CHECK(std::stod(kv.at("attainment_gap")) <= 1e-9);
    CHECK(std::stod(kv.at("max_sampled_deviation")) <= delta + 1e-9);

    CHECK(run({"ric", "--rows", "6"}).code == twrn::cli::kExitUsage);
}

TEST_CASE("cli: selftest passes with the default configuration", "[cli]")
{
    const Run r = run({"selftest"});
    CHECK(r.code == twrn::cli::kExitOk);
    CHECK(r.out.find("PASS") != std::string::npos);
}
