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

#pragma once

#include <filesystem>
#include <vector>

#include "hqw/qubo.hpp"

namespace hqw {

/// One optimizer iteration. `cost` is the objective the optimizer actually
/// moves on (relaxed cost, current-state energy); `energy` is the best binary
/// energy seen so far, so the energy column is non-increasing.
struct TracePoint {
    int iter = 0;
    double cost = 0.0;
    double energy = 0.0;
    double elapsed_ms = 0.0;
};

struct OptResult {
    BinaryAssignment best_x;
    double best_energy = 0.0;
    std::vector<TracePoint> trace;
};

/// {"best_energy": ..., "best_x": [...], "trace": [{iter, cost, energy,
/// elapsed_ms}, ...]}
void write_result_json(const OptResult &result, const std::filesystem::path &path);

/// CSV with header "iter,cost,energy,elapsed_ms".
void write_trace_csv(const OptResult &result, const std::filesystem::path &path);

} // namespace hqw
