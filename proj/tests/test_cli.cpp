// Copyright 2026 The hqw authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Black-box tests that drive the installed command-line binary through a
 * shell, checking exit codes, artifact schemas, and reproducibility.
 */

#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "hqw/classical_opt.hpp"
#include "hqw/qubo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunOutcome {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Unique scratch directory per test case, removed on destruction.
struct Scratch {
    fs::path dir;

    Scratch() {
        static int counter = 0;
        dir = fs::temp_directory_path() /
              ("hqw_cli_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter++));
        fs::create_directories(dir);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
};

RunOutcome run_cli(const Scratch &scratch, const std::string &args) {
    const fs::path out_file = scratch.dir / "stdout.txt";
    const fs::path err_file = scratch.dir / "stderr.txt";
    const std::string cmd = std::string("\"") + HQW_CLI_PATH + "\" " + args +
                            " > \"" + out_file.string() + "\" 2> \"" +
                            err_file.string() + "\"";
    const int status = std::system(cmd.c_str());
    RunOutcome outcome;
    outcome.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    outcome.out = slurp(out_file);
    outcome.err = slurp(err_file);
    return outcome;
}

json load_json(const fs::path &path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return json::parse(in);
}

} // namespace

TEST_CASE("version flag prints the tool name and exits cleanly") {
    Scratch scratch;
    const RunOutcome r = run_cli(scratch, "--version");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("hqw") != std::string::npos);
    CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("unknown flags are usage errors") {
    Scratch scratch;
    CHECK(run_cli(scratch, "--definitely-not-a-flag").exit_code == 2);
    CHECK(run_cli(scratch, "maxcut --wat 3 --out x").exit_code == 2);
}

TEST_CASE("a missing output directory option is a usage error") {
    Scratch scratch;
    CHECK(run_cli(scratch, "maxcut --nodes 6 --method local").exit_code == 2);
}

TEST_CASE("brute force refuses instances beyond its enumeration bound") {
    Scratch scratch;
    const RunOutcome r = run_cli(
        scratch, "maxcut --nodes 30 --method brute --out " +
                     (scratch.dir / "run").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("24") != std::string::npos);
}

TEST_CASE("dense conjugate gradient refuses oversized grids") {
    Scratch scratch;
    const RunOutcome r = run_cli(
        scratch, "poisson --dim 3 --levels 10 --methods cg --out " +
                     (scratch.dir / "run").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("cg") != std::string::npos);
}

TEST_CASE("a missing graph file is reported as a usage error") {
    Scratch scratch;
    const RunOutcome r = run_cli(
        scratch, "maxcut --graph-file /nonexistent/graph.txt --method local "
                 "--out " + (scratch.dir / "run").string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("maxcut writes consistent artifacts and a manifest") {
    Scratch scratch;
    const fs::path out = scratch.dir / "run";
    const RunOutcome r = run_cli(
        scratch,
        "maxcut --nodes 8 --layers 3 --iters 60 --seed 1 --method pipeline "
        "--out " + out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("best_energy=") != std::string::npos);

    const json result = load_json(out / "result.json");
    REQUIRE(result.contains("best_energy"));
    REQUIRE(result.contains("best_x"));
    REQUIRE(result.contains("trace"));
    CHECK(result["best_x"].size() == 8);
    CHECK(!result["trace"].empty());

    // The reported energy matches the saved instance and assignment.
    const hqw::WeightedGraph graph = hqw::load_graph(out / "graph.txt");
    hqw::BinaryAssignment x;
    for (const auto &bit : result["best_x"]) {
        x.push_back(bit.get<int>());
    }
    CHECK(hqw::maxcut_energy(graph, x) ==
          doctest::Approx(result["best_energy"].get<double>()).epsilon(1e-10));

    const std::string trace = slurp(out / "trace.csv");
    CHECK(trace.rfind("iter,cost,energy,elapsed_ms", 0) == 0);

    const json manifest = load_json(out / "manifest.json");
    for (const char *key : {"tool", "version", "subcommand", "started",
                            "finished", "config", "seeds", "artifacts"}) {
        CHECK(manifest.contains(key));
    }
    CHECK(manifest["tool"] == "hqw");
    CHECK(manifest["subcommand"] == "maxcut");
    CHECK(manifest["config"]["nodes"] == 8);
    CHECK(manifest["seeds"] == json::array({1}));
}

TEST_CASE("identical seeds reproduce every computed value") {
    Scratch scratch;
    const std::string args =
        "maxcut --nodes 8 --layers 3 --iters 50 --seed 4 --method quenc --out ";
    const fs::path a = scratch.dir / "a";
    const fs::path b = scratch.dir / "b";
    REQUIRE(run_cli(scratch, args + a.string()).exit_code == 0);
    REQUIRE(run_cli(scratch, args + b.string()).exit_code == 0);

    // Everything except the wall-clock column must agree exactly.
    json ra = load_json(a / "result.json");
    json rb = load_json(b / "result.json");
    CHECK(ra["best_energy"] == rb["best_energy"]);
    CHECK(ra["best_x"] == rb["best_x"]);
    REQUIRE(ra["trace"].size() == rb["trace"].size());
    for (std::size_t k = 0; k < ra["trace"].size(); ++k) {
        CHECK(ra["trace"][k]["iter"] == rb["trace"][k]["iter"]);
        CHECK(ra["trace"][k]["cost"] == rb["trace"][k]["cost"]);
        CHECK(ra["trace"][k]["energy"] == rb["trace"][k]["energy"]);
    }

    auto strip_elapsed = [](const std::string &csv) {
        std::vector<std::string> rows;
        std::istringstream in(csv);
        std::string line;
        while (std::getline(in, line)) {
            rows.push_back(line.substr(0, line.rfind(',')));
        }
        return rows;
    };
    CHECK(strip_elapsed(slurp(a / "trace.csv")) ==
          strip_elapsed(slurp(b / "trace.csv")));
}

TEST_CASE("the brute method reproduces the library result") {
    Scratch scratch;
    const fs::path out = scratch.dir / "run";
    const RunOutcome r = run_cli(
        scratch, "maxcut --nodes 10 --seed 3 --method brute --out " +
                     out.string());
    REQUIRE(r.exit_code == 0);
    const json result = load_json(out / "result.json");

    const auto [x, energy] =
        hqw::brute_force_qubo(hqw::random_weighted_graph(10, 3));
    CHECK(result["best_energy"].get<double>() ==
          doctest::Approx(energy).epsilon(1e-12));
}

TEST_CASE("classification runs emit per-seed histories and a summary") {
    Scratch scratch;
    const fs::path out = scratch.dir / "run";
    const RunOutcome r = run_cli(
        scratch,
        "classify --model classical --samples 60 --train-size 40 --epochs 3 "
        "--seed 5 --repeats 2 --out " + out.string());
    REQUIRE(r.exit_code == 0);

    const json summary = load_json(out / "summary.json");
    CHECK(summary["model"] == "classical");
    CHECK(summary["metric"] == "accuracy");
    REQUIRE(summary["per_repeat"].size() == 2);
    CHECK(summary["per_repeat"][0]["seed"] == 5);
    CHECK(summary["per_repeat"][1]["seed"] == 6);
    CHECK(summary.contains("mean"));
    CHECK(summary.contains("stddev"));

    const std::string history = slurp(out / "history_seed5.csv");
    CHECK(history.rfind("epoch,train_loss,test_metric", 0) == 0);
    CHECK(fs::exists(out / "history_seed6.csv"));
}

TEST_CASE("parallel repeats match the sequential results exactly") {
    Scratch scratch;
    const std::string base =
        "classify --model classical --samples 60 --train-size 40 --epochs 3 "
        "--seed 2 --repeats 3 ";
    const fs::path seq = scratch.dir / "seq";
    const fs::path par = scratch.dir / "par";
    REQUIRE(run_cli(scratch, base + "--jobs 1 --out " + seq.string())
                .exit_code == 0);
    REQUIRE(run_cli(scratch, base + "--jobs 3 --out " + par.string())
                .exit_code == 0);

    const json a = load_json(seq / "summary.json");
    const json b = load_json(par / "summary.json");
    CHECK(a["per_repeat"] == b["per_repeat"]);
    CHECK(a["mean"] == b["mean"]);
}

TEST_CASE("regression trains on named csv columns") {
    Scratch scratch;
    const fs::path out = scratch.dir / "run";
    const std::string data =
        std::string(HQW_SOURCE_DIR) + "/data/example_regression.csv";
    const RunOutcome r = run_cli(
        scratch, "regress --data-csv \"" + data +
                     "\" --model classical --epochs 2 --seed 3 --out " +
                     out.string());
    REQUIRE(r.exit_code == 0);

    const json summary = load_json(out / "summary.json");
    CHECK(summary["model"] == "classical");
    CHECK(summary["metric"] == "mse");
    REQUIRE(summary["per_repeat"].size() == 1);
    CHECK(summary["per_repeat"][0].contains("mse"));
    CHECK(summary["per_repeat"][0].contains("mae"));

    const json manifest = load_json(out / "manifest.json");
    CHECK(manifest["config"]["target"] == "price");
}

TEST_CASE("a misspelled column name is reported to the user") {
    Scratch scratch;
    const std::string data =
        std::string(HQW_SOURCE_DIR) + "/data/example_regression.csv";
    const RunOutcome r = run_cli(
        scratch, "regress --data-csv \"" + data + "\" --target nope --out " +
                     (scratch.dir / "run").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("nope") != std::string::npos);
}

TEST_CASE("regression requires exactly two feature columns") {
    Scratch scratch;
    const std::string data =
        std::string(HQW_SOURCE_DIR) + "/data/example_regression.csv";
    const RunOutcome r = run_cli(
        scratch, "regress --data-csv \"" + data + "\" --features rooms "
                 "--out " + (scratch.dir / "run").string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("config file values apply but command line flags win") {
    Scratch scratch;
    const fs::path cfg = scratch.dir / "run.ini";
    {
        std::ofstream out(cfg);
        out << "[maxcut]\n"
            << "nodes=6\n"
            << "iters=30\n"
            << "method=local\n";
    }
    const fs::path out = scratch.dir / "run";
    const RunOutcome r = run_cli(
        scratch, "--config \"" + cfg.string() + "\" maxcut --iters 10 --out " +
                     out.string());
    REQUIRE(r.exit_code == 0);
    const json manifest = load_json(out / "manifest.json");
    CHECK(manifest["config"]["nodes"] == 6);
    CHECK(manifest["config"]["method"] == "local");
    CHECK(manifest["config"]["iters"] == 10);
}

TEST_CASE("poisson benchmark rows land in a csv artifact") {
    Scratch scratch;
    const fs::path out = scratch.dir / "run";
    const RunOutcome r = run_cli(
        scratch, "poisson --dim 1 --levels 6 --methods tt --methods cg "
                 "--out " + out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("method=tt") != std::string::npos);
    CHECK(r.out.find("method=cg") != std::string::npos);

    const std::string csv = slurp(out / "benchmark.csv");
    CHECK(csv.rfind("method,d,points,wall_ms,residual,iters,max_rank,"
                    "err_analytic,rel_diff", 0) == 0);
    // One header plus one row per method.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
