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

// Command line front end. Four subcommands cover the three workloads:
//
//   hqw maxcut   variational and classical cut optimizers on weighted graphs
//   hqw classify hybrid or classical networks on the two-circles set
//   hqw regress  hybrid or classical regressors on a CSV dataset
//   hqw poisson  tensor-train and conjugate-gradient Poisson benchmarks
//
// Every run writes its artifacts plus a manifest.json with the resolved
// configuration, seeds, artifact names, and timestamps into --out, so a run
// can be reproduced from the manifest alone.
//
// Exit codes: 0 success, 2 bad arguments or inputs, 3 runtime failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hqw/classical_opt.hpp"
#include "hqw/dataset.hpp"
#include "hqw/hqnn.hpp"
#include "hqw/opt_result.hpp"
#include "hqw/poisson.hpp"
#include "hqw/quenc.hpp"
#include "hqw/qubo.hpp"
#include "hqw/rng.hpp"
#include "hqw/tensortrain.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char *kToolVersion = "0.1.0";
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// Bad inputs discovered after flag parsing (out-of-range sizes, missing
// columns, unreadable files) exit with the same code as parse errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string iso_utc_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Manifest {
    std::string subcommand;
    std::string started = iso_utc_now();
    json config = json::object();
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> artifacts;

    void write(const fs::path &dir) const {
        const json j{{"tool", "hqw"},
                     {"version", kToolVersion},
                     {"subcommand", subcommand},
                     {"started", started},
                     {"finished", iso_utc_now()},
                     {"config", config},
                     {"seeds", seeds},
                     {"artifacts", artifacts}};
        std::ofstream out(dir / "manifest.json");
        out << j.dump(2) << '\n';
    }
};

fs::path prepare_out_dir(const std::string &out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw UsageError("cannot create output directory " + dir.string() +
                         ": " + ec.message());
    return dir;
}

double mean_of(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double> &v, double mean) {
    double s = 0.0;
    for (double x : v) {
        const double d = x - mean;
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(v.size()));
}

void write_history_csv(const std::vector<hqw::EpochRecord> &history,
                       const fs::path &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    out << std::setprecision(17);
    out << "epoch,train_loss,test_metric\n";
    for (const auto &rec : history)
        out << rec.epoch << ',' << rec.train_loss << ',' << rec.test_metric
            << '\n';
}

// Fans repeat indices 0..repeats-1 out over up to `jobs` threads. Each
// repeat writes only its own result slot, so the outcome is identical for
// any job count; with jobs == 1 everything runs on the calling thread.
template <typename Fn>
void run_repeats(int repeats, int jobs, Fn &&fn) {
    jobs = std::clamp(jobs, 1, repeats);
    if (jobs == 1) {
        for (int r = 0; r < repeats; ++r)
            fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(repeats);
    auto worker = [&] {
        for (int r = next.fetch_add(1); r < repeats; r = next.fetch_add(1)) {
            try {
                fn(r);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back(worker);
    for (auto &th : pool)
        th.join();
    for (auto &err : errors)
        if (err)
            std::rethrow_exception(err);
}

// ---------------------------------------------------------------------------
// maxcut

struct MaxcutArgs {
    int nodes = 16;
    int layers = 8;
    int iters = 500;
    double learning_rate = 1.0;
    std::string grad = "shift";
    std::uint64_t seed = 0;
    std::string method = "pipeline";
    std::string refine = "local";
    int anneal_sweeps = 2000;
    double anneal_t_start = 2.0;
    double anneal_t_end = 0.02;
    std::string graph_file;
    std::string out;
};

int run_maxcut(const MaxcutArgs &args) {
    hqw::WeightedGraph graph;
    if (!args.graph_file.empty()) {
        try {
            graph = hqw::load_graph(args.graph_file);
        } catch (const std::exception &e) {
            throw UsageError(e.what());
        }
    } else {
        graph = hqw::random_weighted_graph(args.nodes, args.seed);
    }
    const int n = graph.num_nodes;
    if (args.method == "brute" && n > 24)
        throw UsageError("method brute enumerates 2^n assignments and "
                         "supports at most 24 nodes (got " +
                         std::to_string(n) + ")");

    hqw::QuencConfig qc;
    qc.layers = args.layers;
    qc.learning_rate = args.learning_rate;
    qc.max_iters = args.iters;
    qc.grad_mode = args.grad == "fd" ? hqw::GradMode::finite_difference
                                     : hqw::GradMode::parameter_shift;
    qc.seed = args.seed;

    hqw::AnnealSchedule schedule;
    schedule.t_start = args.anneal_t_start;
    schedule.t_end = args.anneal_t_end;
    schedule.sweeps = args.anneal_sweeps;
    schedule.seed = args.seed;

    hqw::OptResult result;
    if (args.method == "quenc") {
        result = hqw::quenc_optimize(graph, qc);
    } else if (args.method == "pipeline") {
        hqw::RefineConfig rc;
        rc.method = args.refine == "sa" ? hqw::RefineMethod::annealing
                                        : hqw::RefineMethod::local_search;
        rc.schedule = schedule;
        result = hqw::hybrid_pipeline(graph, qc, rc);
    } else if (args.method == "sa") {
        hqw::simulated_annealing(graph, schedule, {}, &result);
    } else if (args.method == "local") {
        hqw::Rng rng(args.seed);
        hqw::BinaryAssignment start(n);
        for (auto &bit : start)
            bit = rng.uniform() < 0.5 ? 0 : 1;
        hqw::local_search_1flip(graph, start, &result);
    } else { // brute
        hqw::brute_force_qubo(graph, &result);
    }

    const fs::path dir = prepare_out_dir(args.out);
    hqw::write_result_json(result, dir / "result.json");
    hqw::write_trace_csv(result, dir / "trace.csv");
    if (args.graph_file.empty())
        hqw::save_graph(graph, dir / "graph.txt");

    Manifest manifest;
    manifest.subcommand = "maxcut";
    manifest.seeds = {args.seed};
    manifest.config = {{"nodes", n},
                       {"layers", args.layers},
                       {"iters", args.iters},
                       {"learning_rate", args.learning_rate},
                       {"grad", args.grad},
                       {"seed", args.seed},
                       {"method", args.method},
                       {"refine", args.refine},
                       {"anneal_sweeps", args.anneal_sweeps},
                       {"anneal_t_start", args.anneal_t_start},
                       {"anneal_t_end", args.anneal_t_end},
                       {"graph_file", args.graph_file},
                       {"out", args.out}};
    manifest.artifacts = {"result.json", "trace.csv"};
    if (args.graph_file.empty())
        manifest.artifacts.push_back("graph.txt");
    manifest.write(dir);

    std::cout << std::setprecision(17) << "method=" << args.method
              << " nodes=" << n << " best_energy=" << result.best_energy
              << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
    std::string model = "hybrid";
    int samples = 1000;
    int train_size = 300;
    int epochs = 100;
    double learning_rate = 1e-2;
    int batch_size = 0;
    double noise = 0.1;
    double factor = 0.5;
    int repeats = 1;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string save_model;
    std::string out;
};

int run_classify(const ClassifyArgs &args) {
    if (args.train_size >= args.samples)
        throw UsageError("train-size (" + std::to_string(args.train_size) +
                         ") must leave at least one of " +
                         std::to_string(args.samples) +
                         " samples for the test split");

    struct RepeatOutcome {
        std::uint64_t seed = 0;
        std::vector<hqw::EpochRecord> history;
        double accuracy = 0.0;
        double loss = 0.0;
        hqw::Network network;
    };
    std::vector<RepeatOutcome> outcomes(args.repeats);

    run_repeats(args.repeats, args.jobs, [&](int r) {
        const std::uint64_t seed_r = args.seed + static_cast<std::uint64_t>(r);
        hqw::Dataset all =
            hqw::make_circles(args.samples, args.noise, args.factor, seed_r);
        // Scaling is fixed preprocessing of the generated benchmark set, not
        // part of the learned pipeline, so the statistics come from the full
        // set; the angle encoding stays within its injective range even for
        // tiny training splits.
        const hqw::NormStats stats = hqw::fit_minmax(all);
        hqw::apply_normalization(all, stats);
        hqw::Dataset train, test;
        for (std::size_t k = 0; k < all.size(); ++k) {
            hqw::Dataset &dst =
                k < static_cast<std::size_t>(args.train_size) ? train : test;
            dst.features.push_back(all.features[k]);
            dst.targets.push_back(all.targets[k]);
        }

        const hqw::Network arch = args.model == "hybrid"
                                      ? hqw::make_hybrid_classifier()
                                      : hqw::make_classical_classifier();
        hqw::TrainConfig tc;
        tc.epochs = args.epochs;
        tc.learning_rate = args.learning_rate;
        tc.batch_size = args.batch_size;
        tc.seed = seed_r;
        tc.classification = true;
        hqw::TrainResult tr = hqw::train_network(arch, train, test, tc);

        RepeatOutcome &slot = outcomes[r];
        slot.seed = seed_r;
        slot.history = std::move(tr.history);
        slot.accuracy = tr.test_metrics.accuracy;
        slot.loss = tr.test_metrics.loss;
        slot.network = std::move(tr.network);
    });

    const fs::path dir = prepare_out_dir(args.out);
    Manifest manifest;
    manifest.subcommand = "classify";
    std::vector<double> accuracies;
    json per_repeat = json::array();
    for (const RepeatOutcome &oc : outcomes) {
        const std::string name = "history_seed" + std::to_string(oc.seed) +
                                 ".csv";
        write_history_csv(oc.history, dir / name);
        manifest.artifacts.push_back(name);
        manifest.seeds.push_back(oc.seed);
        accuracies.push_back(oc.accuracy);
        per_repeat.push_back(
            {{"seed", oc.seed}, {"accuracy", oc.accuracy}, {"loss", oc.loss}});
        std::cout << std::setprecision(17) << "seed=" << oc.seed
                  << " final_accuracy=" << oc.accuracy << '\n';
    }
    const double mean = mean_of(accuracies);
    const double stddev = stddev_of(accuracies, mean);

    const json summary{{"model", args.model}, {"metric", "accuracy"},
                       {"per_repeat", per_repeat}, {"mean", mean},
                       {"stddev", stddev}};
    {
        std::ofstream sout(dir / "summary.json");
        sout << summary.dump(2) << '\n';
    }
    manifest.artifacts.push_back("summary.json");

    if (!args.save_model.empty()) {
        hqw::save_network(outcomes.front().network, args.save_model);
        manifest.artifacts.push_back(args.save_model);
    }

    manifest.config = {{"model", args.model},
                       {"samples", args.samples},
                       {"train_size", args.train_size},
                       {"epochs", args.epochs},
                       {"learning_rate", args.learning_rate},
                       {"batch_size", args.batch_size},
                       {"noise", args.noise},
                       {"factor", args.factor},
                       {"repeats", args.repeats},
                       {"seed", args.seed},
                       {"jobs", args.jobs},
                       {"out", args.out}};
    manifest.write(dir);

    std::cout << std::setprecision(17) << "mean_accuracy=" << mean
              << " stddev=" << stddev << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// regress

struct RegressArgs {
    std::string data_csv;
    std::vector<std::string> features;
    std::string target;
    std::string model = "hybrid";
    int epochs = 200;
    double learning_rate = 3e-3;
    int batch_size = 0;
    double test_fraction = 0.2;
    int train_size = 0;
    std::string norm = "minmax";
    bool no_target_scaling = false;
    int repeats = 1;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string save_model;
    std::string out;
};

int run_regress(const RegressArgs &args) {
    hqw::CsvTable table;
    try {
        table = hqw::load_csv_table(args.data_csv);
    } catch (const std::exception &e) {
        throw UsageError(e.what());
    }
    const std::string target =
        args.target.empty() ? table.columns.back() : args.target;
    if (std::find(table.columns.begin(), table.columns.end(), target) ==
        table.columns.end())
        throw UsageError("target column '" + target + "' not found in " +
                         args.data_csv);
    std::vector<std::string> features = args.features;
    if (features.empty())
        for (const std::string &col : table.columns)
            if (col != target)
                features.push_back(col);
    if (features.size() != 2)
        throw UsageError("the regressors take exactly 2 feature columns, got " +
                         std::to_string(features.size()));
    hqw::Dataset full;
    try {
        full = hqw::select_columns(table, features, target);
    } catch (const std::exception &e) {
        throw UsageError(e.what());
    }

    struct RepeatOutcome {
        std::uint64_t seed = 0;
        std::vector<hqw::EpochRecord> history;
        double mse = 0.0;
        double mae = 0.0;
        hqw::Network network;
    };
    std::vector<RepeatOutcome> outcomes(args.repeats);

    // Scaling statistics come from the full table (fixed preprocessing of
    // the benchmark data); the angle encoding then stays within its
    // injective range for every split size.
    const hqw::NormStats stats = args.norm == "zscore" ? hqw::fit_zscore(full)
                                                       : hqw::fit_minmax(full);
    hqw::apply_normalization(full, stats);
    double t_span = 1.0;
    if (!args.no_target_scaling) {
        const double t_lo =
            *std::min_element(full.targets.begin(), full.targets.end());
        const double t_hi =
            *std::max_element(full.targets.begin(), full.targets.end());
        t_span = t_hi > t_lo ? t_hi - t_lo : 1.0;
        // Reported errors are converted back to the original units.
        for (double &y : full.targets)
            y = (y - t_lo) / t_span;
    }

    run_repeats(args.repeats, args.jobs, [&](int r) {
        const std::uint64_t seed_r = args.seed + static_cast<std::uint64_t>(r);
        auto [train, test] =
            hqw::train_test_split(full, args.test_fraction, seed_r);
        if (args.train_size > 0) {
            if (static_cast<std::size_t>(args.train_size) > train.size())
                throw UsageError(
                    "train-size (" + std::to_string(args.train_size) +
                    ") exceeds the training split of " +
                    std::to_string(train.size()) + " rows");
            train.features.resize(args.train_size);
            train.targets.resize(args.train_size);
        }

        const hqw::Network arch = args.model == "hybrid"
                                      ? hqw::make_hybrid_regressor()
                                      : hqw::make_classical_regressor();
        hqw::TrainConfig tc;
        tc.epochs = args.epochs;
        tc.learning_rate = args.learning_rate;
        tc.batch_size = args.batch_size;
        tc.seed = seed_r;
        tc.classification = false;
        hqw::TrainResult tr = hqw::train_network(arch, train, test, tc);

        RepeatOutcome &slot = outcomes[r];
        slot.seed = seed_r;
        slot.history = std::move(tr.history);
        slot.mse = tr.test_metrics.mse * t_span * t_span;
        slot.mae = tr.test_metrics.mae * t_span;
        slot.network = std::move(tr.network);
    });

    const fs::path dir = prepare_out_dir(args.out);
    Manifest manifest;
    manifest.subcommand = "regress";
    std::vector<double> mses, maes;
    json per_repeat = json::array();
    for (const RepeatOutcome &oc : outcomes) {
        const std::string name = "history_seed" + std::to_string(oc.seed) +
                                 ".csv";
        write_history_csv(oc.history, dir / name);
        manifest.artifacts.push_back(name);
        manifest.seeds.push_back(oc.seed);
        mses.push_back(oc.mse);
        maes.push_back(oc.mae);
        per_repeat.push_back(
            {{"seed", oc.seed}, {"mse", oc.mse}, {"mae", oc.mae}});
        std::cout << std::setprecision(17) << "seed=" << oc.seed
                  << " test_mse=" << oc.mse << " test_mae=" << oc.mae << '\n';
    }
    const double mean = mean_of(mses);
    const double stddev = stddev_of(mses, mean);
    const double mae_mean = mean_of(maes);
    const double mae_stddev = stddev_of(maes, mae_mean);

    const json summary{{"model", args.model},
                       {"metric", "mse"},
                       {"per_repeat", per_repeat},
                       {"mean", mean},
                       {"stddev", stddev},
                       {"mae_mean", mae_mean},
                       {"mae_stddev", mae_stddev}};
    {
        std::ofstream sout(dir / "summary.json");
        sout << summary.dump(2) << '\n';
    }
    manifest.artifacts.push_back("summary.json");

    if (!args.save_model.empty()) {
        hqw::save_network(outcomes.front().network, args.save_model);
        manifest.artifacts.push_back(args.save_model);
    }

    manifest.config = {{"data_csv", args.data_csv},
                       {"features", features},
                       {"target", target},
                       {"model", args.model},
                       {"epochs", args.epochs},
                       {"learning_rate", args.learning_rate},
                       {"batch_size", args.batch_size},
                       {"test_fraction", args.test_fraction},
                       {"train_size", args.train_size},
                       {"norm", args.norm},
                       {"no_target_scaling", args.no_target_scaling},
                       {"repeats", args.repeats},
                       {"seed", args.seed},
                       {"jobs", args.jobs},
                       {"out", args.out}};
    manifest.write(dir);

    std::cout << std::setprecision(17) << "mean_mse=" << mean
              << " stddev=" << stddev << " mean_mae=" << mae_mean << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// poisson

struct PoissonArgs {
    int dim = 3;
    int levels = 5;
    std::vector<std::string> methods = {"tt"};
    double tol = 1e-8;
    int max_rank = 40;
    int sweeps = 50;
    int enrich = 4;
    int cg_iters = 0;
    std::string out;
};

struct PoissonRow {
    std::string method;
    int d = 0;
    std::size_t points = 0;
    double wall_ms = 0.0;
    double residual = 0.0;
    int iters = 0;
    int max_rank = 0;       // tt only
    double err_analytic = -1.0; // 1D only; max abs error vs closed form
    double rel_diff = -1.0;     // filled when both methods ran
};

int run_poisson(const PoissonArgs &args) {
    std::vector<std::string> methods;
    for (const std::string &m : args.methods)
        if (std::find(methods.begin(), methods.end(), m) == methods.end())
            methods.push_back(m);
    const bool want_tt =
        std::find(methods.begin(), methods.end(), "tt") != methods.end();
    const bool want_cg =
        std::find(methods.begin(), methods.end(), "cg") != methods.end();

    const int d = args.levels;
    if (args.dim == 1 && d > 24)
        throw UsageError("dim 1 supports at most 24 levels (got " +
                         std::to_string(d) + ")");
    if (args.dim == 3 && d > 12)
        throw UsageError("dim 3 supports at most 12 levels (got " +
                         std::to_string(d) + ")");
    if (want_cg) {
        // Dense arrays are bounded at 2^27 values; the grid has (2^levels)^dim
        // points.
        const int dense_bits = args.dim * d;
        if (dense_bits > 27 || (args.dim == 1 && d > 24))
            throw UsageError(
                "method cg stores the dense grid and supports at most " +
                std::string(args.dim == 3 ? "9" : "24") +
                " levels for dim " + std::to_string(args.dim) + " (got " +
                std::to_string(d) + ")");
    }

    const std::size_t points = std::size_t{1}
                               << static_cast<unsigned>(args.dim * d);
    const int dense_cap_bits = 24;
    const bool can_densify_tt = args.dim * d <= dense_cap_bits;

    hqw::AmenOptions opts;
    opts.tol = args.tol;
    opts.max_rank = args.max_rank;
    opts.max_sweeps = args.sweeps;
    opts.enrich_rank = args.enrich;

    std::vector<PoissonRow> rows;
    std::vector<double> tt_dense, cg_dense;

    if (want_tt) {
        const hqw::PoissonTtResult r = args.dim == 1
                                           ? hqw::solve_poisson_tt_1d(d, opts)
                                           : hqw::solve_poisson_tt_3d(d, opts);
        PoissonRow row;
        row.method = "tt";
        row.d = d;
        row.points = points;
        row.wall_ms = r.wall_ms;
        row.residual = r.residual;
        row.iters = r.sweeps;
        row.max_rank = r.max_rank;
        if (can_densify_tt)
            tt_dense = hqw::tt_to_dense(r.solution);
        if (args.dim == 1 && !tt_dense.empty()) {
            const std::vector<double> exact = hqw::exact_solution_1d(d);
            double err = 0.0;
            for (std::size_t i = 0; i < exact.size(); ++i)
                err = std::max(err, std::abs(tt_dense[i] - exact[i]));
            row.err_analytic = err;
        }
        rows.push_back(row);
    }
    if (want_cg) {
        const hqw::CgResult r = args.dim == 1
                                    ? hqw::cg_solve_1d(d, args.tol,
                                                       args.cg_iters)
                                    : hqw::cg_solve_3d(d, args.tol,
                                                       args.cg_iters);
        PoissonRow row;
        row.method = "cg";
        row.d = d;
        row.points = points;
        row.wall_ms = r.wall_ms;
        row.residual = r.residual;
        row.iters = r.iterations;
        if (args.dim == 1) {
            const std::vector<double> exact = hqw::exact_solution_1d(d);
            double err = 0.0;
            for (std::size_t i = 0; i < exact.size(); ++i)
                err = std::max(err, std::abs(r.solution[i] - exact[i]));
            row.err_analytic = err;
        }
        cg_dense = r.solution;
        rows.push_back(row);
    }

    if (want_tt && want_cg && !tt_dense.empty() && !cg_dense.empty()) {
        double diff2 = 0.0, ref2 = 0.0;
        for (std::size_t i = 0; i < cg_dense.size(); ++i) {
            const double delta = tt_dense[i] - cg_dense[i];
            diff2 += delta * delta;
            ref2 += cg_dense[i] * cg_dense[i];
        }
        const double rel = std::sqrt(diff2 / ref2);
        for (PoissonRow &row : rows)
            row.rel_diff = rel;
        std::cout << std::setprecision(17)
                  << "rel_l2_diff_tt_vs_cg=" << rel << '\n';
    }

    const fs::path dir = prepare_out_dir(args.out);
    {
        std::ofstream out(dir / "benchmark.csv");
        out << std::setprecision(17);
        out << "method,d,points,wall_ms,residual,iters,max_rank,"
               "err_analytic,rel_diff\n";
        for (const PoissonRow &row : rows) {
            out << row.method << ',' << row.d << ',' << row.points << ','
                << row.wall_ms << ',' << row.residual << ',' << row.iters
                << ',';
            if (row.method == "tt")
                out << row.max_rank;
            out << ',';
            if (row.err_analytic >= 0.0)
                out << row.err_analytic;
            out << ',';
            if (row.rel_diff >= 0.0)
                out << row.rel_diff;
            out << '\n';
        }
    }

    for (const PoissonRow &row : rows) {
        std::cout << std::setprecision(17) << "method=" << row.method
                  << " d=" << row.d << " points=" << row.points
                  << " wall_ms=" << row.wall_ms
                  << " residual=" << row.residual;
        if (row.method == "tt")
            std::cout << " max_rank=" << row.max_rank;
        if (row.err_analytic >= 0.0)
            std::cout << " err_analytic=" << row.err_analytic;
        std::cout << '\n';
    }

    Manifest manifest;
    manifest.subcommand = "poisson";
    manifest.config = {{"dim", args.dim},
                       {"levels", args.levels},
                       {"methods", methods},
                       {"tol", args.tol},
                       {"max_rank", args.max_rank},
                       {"sweeps", args.sweeps},
                       {"enrich", args.enrich},
                       {"cg_iters", args.cg_iters},
                       {"out", args.out}};
    manifest.artifacts = {"benchmark.csv"};
    manifest.write(dir);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid quantum-classical workbench"};
    app.set_version_flag("--version", std::string("hqw ") + kToolVersion);
    app.set_config("--config", "",
                   "Read option defaults from a key=value file with "
                   "[subcommand] sections; command line flags win");
    app.require_subcommand(1);

    MaxcutArgs ma;
    CLI::App *mc = app.add_subcommand(
        "maxcut", "Weighted MaxCut via the amplitude-encoded variational "
                  "optimizer or classical solvers");
    mc->add_option("--nodes", ma.nodes, "Graph size for generated instances")
        ->capture_default_str()
        ->check(CLI::Range(2, 1 << 20));
    mc->add_option("--layers", ma.layers, "Ansatz layers")
        ->capture_default_str()
        ->check(CLI::Range(1, 10000));
    mc->add_option("--iters", ma.iters, "Optimizer iteration budget")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    mc->add_option("--learning-rate", ma.learning_rate, "Adam step size")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    mc->add_option("--grad", ma.grad, "Gradient mode for the quantum loop")
        ->capture_default_str()
        ->check(CLI::IsMember({"shift", "fd"}));
    mc->add_option("--seed", ma.seed, "Seed for instance and optimizer")
        ->capture_default_str();
    mc->add_option("--method", ma.method, "Solver")
        ->capture_default_str()
        ->check(CLI::IsMember({"quenc", "sa", "local", "pipeline", "brute"}));
    mc->add_option("--refine", ma.refine,
                   "Classical refinement stage for the pipeline")
        ->capture_default_str()
        ->check(CLI::IsMember({"local", "sa"}));
    mc->add_option("--anneal-sweeps", ma.anneal_sweeps,
                   "Annealing sweeps (methods sa and pipeline)")
        ->capture_default_str()
        ->check(CLI::Range(1, 10000000));
    mc->add_option("--anneal-t-start", ma.anneal_t_start,
                   "Initial annealing temperature")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    mc->add_option("--anneal-t-end", ma.anneal_t_end,
                   "Final annealing temperature")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    mc->add_option("--graph-file", ma.graph_file,
                   "Load a weighted edge list instead of generating a graph");
    mc->add_option("--out", ma.out, "Output directory")->required();

    ClassifyArgs ca;
    CLI::App *cc = app.add_subcommand(
        "classify", "Train classifiers on the two-circles dataset");
    cc->add_option("--model", ca.model, "Architecture")
        ->capture_default_str()
        ->check(CLI::IsMember({"classical", "hybrid"}));
    cc->add_option("--samples", ca.samples, "Generated dataset size")
        ->capture_default_str()
        ->check(CLI::Range(4, 1000000));
    cc->add_option("--train-size", ca.train_size,
                   "Training rows; the rest become the test split")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    cc->add_option("--epochs", ca.epochs, "Training epochs")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    cc->add_option("--learning-rate", ca.learning_rate, "Adam step size")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cc->add_option("--batch-size", ca.batch_size,
                   "Minibatch size; 0 trains full batch")
        ->capture_default_str()
        ->check(CLI::Range(0, 1000000));
    cc->add_option("--noise", ca.noise, "Gaussian feature noise")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cc->add_option("--factor", ca.factor, "Inner circle radius")
        ->capture_default_str();
    cc->add_option("--repeats", ca.repeats, "Independent seeded repeats")
        ->capture_default_str()
        ->check(CLI::Range(1, 10000));
    cc->add_option("--seed", ca.seed, "Base seed; repeat r uses seed + r")
        ->capture_default_str();
    cc->add_option("--jobs", ca.jobs, "Worker threads for repeats")
        ->capture_default_str()
        ->check(CLI::Range(1, 256));
    cc->add_option("--save-model", ca.save_model,
                   "Write the first repeat's trained network to this path");
    cc->add_option("--out", ca.out, "Output directory")->required();

    RegressArgs ra;
    CLI::App *rc = app.add_subcommand(
        "regress", "Train two-feature regressors on a CSV dataset");
    rc->add_option("--data-csv", ra.data_csv, "CSV file with a header row")
        ->required();
    rc->add_option("--features", ra.features,
                   "Feature column names (comma separated, exactly 2)")
        ->delimiter(',');
    rc->add_option("--target", ra.target,
                   "Target column name; defaults to the last column");
    rc->add_option("--model", ra.model, "Architecture")
        ->capture_default_str()
        ->check(CLI::IsMember({"classical", "hybrid"}));
    rc->add_option("--epochs", ra.epochs, "Training epochs")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    rc->add_option("--learning-rate", ra.learning_rate, "Adam step size")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    rc->add_option("--batch-size", ra.batch_size,
                   "Minibatch size; 0 trains full batch")
        ->capture_default_str()
        ->check(CLI::Range(0, 1000000));
    rc->add_option("--test-fraction", ra.test_fraction,
                   "Held-out fraction of the rows")
        ->capture_default_str()
        ->check(CLI::Range(0.01, 0.99));
    rc->add_option("--train-size", ra.train_size,
                   "Keep only this many training rows; 0 keeps all")
        ->capture_default_str()
        ->check(CLI::Range(0, 10000000));
    rc->add_option("--norm", ra.norm, "Feature normalization")
        ->capture_default_str()
        ->check(CLI::IsMember({"minmax", "zscore"}));
    rc->add_flag("--no-target-scaling", ra.no_target_scaling,
                 "Train on raw target values");
    rc->add_option("--repeats", ra.repeats, "Independent seeded repeats")
        ->capture_default_str()
        ->check(CLI::Range(1, 10000));
    rc->add_option("--seed", ra.seed, "Base seed; repeat r uses seed + r")
        ->capture_default_str();
    rc->add_option("--jobs", ra.jobs, "Worker threads for repeats")
        ->capture_default_str()
        ->check(CLI::Range(1, 256));
    rc->add_option("--save-model", ra.save_model,
                   "Write the first repeat's trained network to this path");
    rc->add_option("--out", ra.out, "Output directory")->required();

    PoissonArgs pa;
    CLI::App *pc = app.add_subcommand(
        "poisson", "Benchmark tensor-train and conjugate-gradient solvers "
                   "for the discrete Poisson equation");
    pc->add_option("--dim", pa.dim, "Spatial dimension")
        ->capture_default_str()
        ->check(CLI::IsMember({1, 3}));
    pc->add_option("--levels", pa.levels,
                   "Grid levels; 2^levels points per axis")
        ->capture_default_str()
        ->check(CLI::Range(1, 30));
    pc->add_option("--methods", pa.methods, "Solvers to run (tt, cg)")
        ->delimiter(',')
        ->check(CLI::IsMember({"tt", "cg"}));
    pc->add_option("--tol", pa.tol, "Relative residual target")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    pc->add_option("--max-rank", pa.max_rank, "Tensor-train rank cap")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000));
    pc->add_option("--sweeps", pa.sweeps, "Maximum solver sweeps")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000));
    pc->add_option("--enrich", pa.enrich, "Residual enrichment rank")
        ->capture_default_str()
        ->check(CLI::Range(1, 100));
    pc->add_option("--cg-iters", pa.cg_iters,
                   "Conjugate gradient iteration cap; 0 picks a default")
        ->capture_default_str()
        ->check(CLI::Range(0, 100000000));
    pc->add_option("--out", pa.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (mc->parsed())
            return run_maxcut(ma);
        if (cc->parsed())
            return run_classify(ca);
        if (rc->parsed())
            return run_regress(ra);
        if (pc->parsed())
            return run_poisson(pa);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
