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
 * Classical MaxCut solvers: exhaustive search, greedy 1-flip local search,
 * and single-flip Metropolis annealing. All of them minimize the energy
 * defined in qubo.hpp and are bit-for-bit deterministic for a fixed seed.
 */

#pragma once

#include <cstdint>
#include <utility>

#include "hqw/opt_result.hpp"
#include "hqw/qubo.hpp"

namespace hqw {

struct AnnealSchedule {
    double t_start = 2.0;
    double t_end = 0.02; // geometric decay t_start -> t_end over the sweeps
    int sweeps = 2000;   // one sweep proposes num_nodes single-bit flips
    std::uint64_t seed = 0;
};

/// Exact minimum by Gray-code enumeration of all 2^n assignments (n <= 24).
/// Ties are broken toward the lexicographically smallest assignment.
/// When `result` is given, fills it with a single-point trace.
std::pair<BinaryAssignment, double>
brute_force_qubo(const WeightedGraph &graph, OptResult *result = nullptr);

/// Best-improvement single-bit-flip descent from `start`; stops when no flip
/// strictly lowers the energy. The returned energy never exceeds E(start).
std::pair<BinaryAssignment, double>
local_search_1flip(const WeightedGraph &graph, const BinaryAssignment &start,
                   OptResult *result = nullptr);

/// Metropolis single-flip annealing with a geometric temperature schedule.
/// Returns the best assignment seen across the whole run. `start` may be
/// empty, in which case the initial assignment is drawn from the seed.
std::pair<BinaryAssignment, double>
simulated_annealing(const WeightedGraph &graph, const AnnealSchedule &schedule,
                    const BinaryAssignment &start = {},
                    OptResult *result = nullptr);

} // namespace hqw
