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

#include "hqw/classical_opt.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hqw/rng.hpp"

namespace hqw {

namespace {

double elapsed_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

// Energy change from flipping bit b: edges to same-side neighbors get cut
// (-d each), edges to opposite-side neighbors get uncut (+d each).
double flip_delta(const std::vector<double> &adj, const BinaryAssignment &x,
                  int n, int b) {
    const double *row = adj.data() + static_cast<std::size_t>(b) * n;
    double same = 0.0;
    double diff = 0.0;
    for (int j = 0; j < n; ++j) {
        if (x[j] == x[b])
            same += row[j];
        else
            diff += row[j];
    }
    return diff - same;
}

} // namespace

std::pair<BinaryAssignment, double> brute_force_qubo(const WeightedGraph &graph,
                                                     OptResult *result) {
    validate_graph(graph);
    const int n = graph.num_nodes;
    if (n < 1 || n > 24)
        throw std::invalid_argument("brute_force_qubo: supports 1..24 nodes");
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> adj = dense_adjacency(graph);

    BinaryAssignment x(n, 0);
    BinaryAssignment best = x;
    double energy = 0.0;    // running energy with float drift
    double best_exact = 0.0; // re-evaluated exactly on every improvement

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < total; ++g) {
        // Consecutive Gray codes differ in bit ctz(g).
        const int b = std::countr_zero(g);
        energy += flip_delta(adj, x, n, b);
        x[b] ^= 1;
        if (energy <= best_exact + 1e-6) {
            const double exact = maxcut_energy(graph, x);
            energy = exact;
            if (exact < best_exact ||
                (exact == best_exact &&
                 std::lexicographical_compare(x.begin(), x.end(), best.begin(),
                                              best.end()))) {
                best = x;
                best_exact = exact;
            }
        }
    }
    if (result) {
        result->best_x = best;
        result->best_energy = best_exact;
        result->trace = {{0, best_exact, best_exact, elapsed_ms_since(t0)}};
    }
    return {best, best_exact};
}

std::pair<BinaryAssignment, double>
local_search_1flip(const WeightedGraph &graph, const BinaryAssignment &start,
                   OptResult *result) {
    validate_graph(graph);
    const int n = graph.num_nodes;
    if (static_cast<int>(start.size()) != n)
        throw std::invalid_argument("local_search_1flip: start size mismatch");
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> adj = dense_adjacency(graph);

    BinaryAssignment x = start;
    // same[i] / diff[i]: total edge weight from i to nodes on the same /
    // opposite side, kept incrementally so each step costs O(n).
    std::vector<double> same(n, 0.0), diff(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double *row = adj.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            (x[j] == x[i] ? same[i] : diff[i]) += row[j];
        }
    }
    double energy = maxcut_energy(graph, x);
    if (result)
        result->trace.push_back({0, energy, energy, elapsed_ms_since(t0)});

    constexpr long kMaxFlips = 1000000;
    for (long step = 1; step <= kMaxFlips; ++step) {
        int arg = -1;
        double best_gain = -1e-12; // strict improvement only
        for (int i = 0; i < n; ++i) {
            const double gain = diff[i] - same[i];
            if (gain < best_gain) {
                best_gain = gain;
                arg = i;
            }
        }
        if (arg < 0)
            break;
        const double *row = adj.data() + static_cast<std::size_t>(arg) * n;
        for (int j = 0; j < n; ++j) {
            if (j == arg || row[j] == 0.0)
                continue;
            if (x[j] == x[arg]) {
                same[j] -= row[j];
                diff[j] += row[j];
            } else {
                same[j] += row[j];
                diff[j] -= row[j];
            }
        }
        std::swap(same[arg], diff[arg]);
        x[arg] ^= 1;
        energy += best_gain;
        if (result)
            result->trace.push_back(
                {static_cast<int>(step), energy, energy, elapsed_ms_since(t0)});
        if (step == kMaxFlips)
            throw std::runtime_error("local_search_1flip: did not terminate");
    }

    energy = maxcut_energy(graph, x);
    if (result) {
        result->best_x = x;
        result->best_energy = energy;
        if (!result->trace.empty())
            result->trace.back().energy = energy;
    }
    return {x, energy};
}

std::pair<BinaryAssignment, double>
simulated_annealing(const WeightedGraph &graph, const AnnealSchedule &schedule,
                    const BinaryAssignment &start, OptResult *result) {
    validate_graph(graph);
    const int n = graph.num_nodes;
    if (n < 1)
        throw std::invalid_argument("simulated_annealing: empty graph");
    if (!(schedule.t_start > 0.0) || !(schedule.t_end > 0.0) ||
        schedule.t_end > schedule.t_start)
        throw std::invalid_argument(
            "simulated_annealing: need t_start >= t_end > 0");
    if (schedule.sweeps < 1)
        throw std::invalid_argument("simulated_annealing: sweeps must be >= 1");
    if (!start.empty() && static_cast<int>(start.size()) != n)
        throw std::invalid_argument("simulated_annealing: start size mismatch");

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> adj = dense_adjacency(graph);
    Rng rng(schedule.seed);

    BinaryAssignment x(n, 0);
    if (start.empty()) {
        for (int i = 0; i < n; ++i)
            x[i] = static_cast<std::uint8_t>(rng.integer(2));
    } else {
        x = start;
    }

    std::vector<double> same(n, 0.0), diff(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double *row = adj.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            (x[j] == x[i] ? same[i] : diff[i]) += row[j];
        }
    }
    double energy = maxcut_energy(graph, x);
    BinaryAssignment best = x;
    double best_energy = energy;

    const double ratio = schedule.t_end / schedule.t_start;
    const int denom = std::max(1, schedule.sweeps - 1);
    for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
        const double temp =
            schedule.t_start * std::pow(ratio, static_cast<double>(sweep) / denom);
        for (int p = 0; p < n; ++p) {
            const int i = static_cast<int>(rng.integer(n));
            const double delta = diff[i] - same[i];
            if (delta > 0.0 && rng.uniform() >= std::exp(-delta / temp))
                continue;
            const double *row = adj.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) {
                if (j == i || row[j] == 0.0)
                    continue;
                if (x[j] == x[i]) {
                    same[j] -= row[j];
                    diff[j] += row[j];
                } else {
                    same[j] += row[j];
                    diff[j] -= row[j];
                }
            }
            std::swap(same[i], diff[i]);
            x[i] ^= 1;
            energy += delta;
            if (energy < best_energy) {
                best = x;
                best_energy = energy;
            }
        }
        if (result)
            result->trace.push_back(
                {sweep, energy, best_energy, elapsed_ms_since(t0)});
    }

    best_energy = maxcut_energy(graph, best);
    if (result) {
        result->best_x = best;
        result->best_energy = best_energy;
        if (!result->trace.empty())
            result->trace.back().energy = best_energy;
    }
    return {best, best_energy};
}

} // namespace hqw
