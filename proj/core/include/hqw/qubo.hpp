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
 * Weighted-graph MaxCut instances and their QUBO form.
 *
 * The energy convention is the single-counted sum
 *   E(x) = -sum_{i<j} d_ij (x_i - x_j)^2
 * which equals x^T Q x for the matrix built by graph_to_qubo. Lower is
 * better; -E is the weight of the cut.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace hqw {

struct Edge {
    int i = 0;
    int j = 0; // i < j
    double weight = 0.0;
};

struct WeightedGraph {
    int num_nodes = 0;
    std::vector<Edge> edges;
};

/// One bit per node: which side of the cut the node is on.
using BinaryAssignment = std::vector<std::uint8_t>;

/// Upper-triangular QUBO matrix stored dense row-major.
struct QuboMatrix {
    int size = 0;
    std::vector<double> values; // size*size, zero strictly below the diagonal

    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * size + j];
    }
    double &at(int i, int j) {
        return values[static_cast<std::size_t>(i) * size + j];
    }
};

/// Throws std::invalid_argument if the edge list violates the invariants
/// (indices in range, i < j, positive weight, no duplicates).
void validate_graph(const WeightedGraph &graph);

/// Complete graph on n nodes with weights uniform in [0.01, 1].
WeightedGraph random_weighted_graph(int n, std::uint64_t seed);

/// E(x) = -sum_{i<j} d_ij (x_i - x_j)^2.
double maxcut_energy(const WeightedGraph &graph, const BinaryAssignment &x);

/// Q_ij = 2 d_ij above the diagonal, Q_ii = -sum_j d_ij; x^T Q x == E(x).
QuboMatrix graph_to_qubo(const WeightedGraph &graph);

/// x^T Q x over binary x.
double qubo_energy(const QuboMatrix &q, const BinaryAssignment &x);

/// Symmetric dense adjacency (row-major num_nodes x num_nodes).
std::vector<double> dense_adjacency(const WeightedGraph &graph);

/// Text format: first line "n m", then m lines "i j w" (0-based indices).
WeightedGraph load_graph(const std::filesystem::path &path);
void save_graph(const WeightedGraph &graph, const std::filesystem::path &path);

} // namespace hqw
