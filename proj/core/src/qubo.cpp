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

#include "hqw/qubo.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "hqw/rng.hpp"

namespace hqw {

void validate_graph(const WeightedGraph &graph) {
    if (graph.num_nodes < 0)
        throw std::invalid_argument("graph: negative node count");
    std::set<std::pair<int, int>> seen;
    for (const Edge &e : graph.edges) {
        if (e.i < 0 || e.j < 0 || e.i >= graph.num_nodes || e.j >= graph.num_nodes)
            throw std::invalid_argument("graph: edge index out of range");
        if (e.i >= e.j)
            throw std::invalid_argument("graph: edges must satisfy i < j");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("graph: edge weights must be positive and finite");
        if (!seen.insert({e.i, e.j}).second)
            throw std::invalid_argument("graph: duplicate edge");
    }
}

WeightedGraph random_weighted_graph(int n, std::uint64_t seed) {
    if (n < 2)
        throw std::invalid_argument("random_weighted_graph: need at least 2 nodes");
    WeightedGraph graph;
    graph.num_nodes = n;
    graph.edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    Rng rng(seed);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            graph.edges.push_back({i, j, rng.uniform(0.01, 1.0)});
    return graph;
}

double maxcut_energy(const WeightedGraph &graph, const BinaryAssignment &x) {
    if (static_cast<int>(x.size()) != graph.num_nodes)
        throw std::invalid_argument("maxcut_energy: assignment size mismatch");
    double cut = 0.0;
    for (const Edge &e : graph.edges)
        if (x[e.i] != x[e.j])
            cut += e.weight;
    return -cut;
}

QuboMatrix graph_to_qubo(const WeightedGraph &graph) {
    validate_graph(graph);
    QuboMatrix q;
    q.size = graph.num_nodes;
    q.values.assign(static_cast<std::size_t>(q.size) * q.size, 0.0);
    for (const Edge &e : graph.edges) {
        q.at(e.i, e.j) += 2.0 * e.weight;
        q.at(e.i, e.i) -= e.weight;
        q.at(e.j, e.j) -= e.weight;
    }
    return q;
}

double qubo_energy(const QuboMatrix &q, const BinaryAssignment &x) {
    if (static_cast<int>(x.size()) != q.size)
        throw std::invalid_argument("qubo_energy: assignment size mismatch");
    double e = 0.0;
    for (int i = 0; i < q.size; ++i) {
        if (!x[i])
            continue;
        for (int j = i; j < q.size; ++j)
            if (x[j])
                e += q.at(i, j);
    }
    return e;
}

std::vector<double> dense_adjacency(const WeightedGraph &graph) {
    const std::size_t n = static_cast<std::size_t>(graph.num_nodes);
    std::vector<double> adj(n * n, 0.0);
    for (const Edge &e : graph.edges) {
        adj[static_cast<std::size_t>(e.i) * n + e.j] = e.weight;
        adj[static_cast<std::size_t>(e.j) * n + e.i] = e.weight;
    }
    return adj;
}

WeightedGraph load_graph(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_graph: cannot open " + path.string());
    WeightedGraph graph;
    int m = 0;
    if (!(in >> graph.num_nodes >> m))
        throw std::runtime_error("load_graph: malformed header in " + path.string());
    graph.edges.reserve(static_cast<std::size_t>(std::max(m, 0)));
    for (int k = 0; k < m; ++k) {
        Edge e;
        if (!(in >> e.i >> e.j >> e.weight))
            throw std::runtime_error("load_graph: malformed edge line " +
                                     std::to_string(k) + " in " + path.string());
        if (e.i > e.j)
            std::swap(e.i, e.j);
        graph.edges.push_back(e);
    }
    validate_graph(graph);
    return graph;
}

void save_graph(const WeightedGraph &graph, const std::filesystem::path &path) {
    validate_graph(graph);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("save_graph: cannot open " + path.string());
    out << graph.num_nodes << ' ' << graph.edges.size() << '\n';
    out.precision(17);
    for (const Edge &e : graph.edges)
        out << e.i << ' ' << e.j << ' ' << e.weight << '\n';
    if (!out)
        throw std::runtime_error("save_graph: write failed for " + path.string());
}

} // namespace hqw
