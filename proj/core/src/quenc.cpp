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

#include "hqw/quenc.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hqw/optim.hpp"
#include "hqw/rng.hpp"

namespace hqw {

namespace {

constexpr double kMassFloor = 1e-12;

int ceil_log2(int n) {
    int m = 0;
    while ((1 << m) < n)
        ++m;
    return m;
}

// Raw projector expectations per node: mass[i].first = |a_{2i}|^2,
// mass[i].second = |a_{2i+1}|^2.
void pair_masses(const StateVector &state, int n_c, std::vector<double> &even,
                 std::vector<double> &odd) {
    even.resize(n_c);
    odd.resize(n_c);
    for (int i = 0; i < n_c; ++i) {
        even[i] = std::norm(state.amplitudes[2 * static_cast<std::size_t>(i)]);
        odd[i] = std::norm(state.amplitudes[2 * static_cast<std::size_t>(i) + 1]);
    }
}

} // namespace

AnsatzSpec build_ansatz(int n_c, int layers) {
    if (n_c < 2)
        throw std::invalid_argument("build_ansatz: need at least 2 nodes");
    if (layers < 1)
        throw std::invalid_argument("build_ansatz: need at least 1 layer");
    const int m = ceil_log2(n_c);
    AnsatzSpec spec;
    spec.num_qubits = m + 1;
    spec.layers = layers;
    spec.rotation_axis.assign(layers, RotationAxis::Y);
    std::vector<std::pair<int, int>> chain;
    for (int q = 0; q + 1 < spec.num_qubits; ++q)
        chain.emplace_back(q, q + 1);
    spec.entangling.assign(layers, chain);
    spec.initial_superposition = true;
    return spec;
}

std::vector<double> conditional_probabilities(const StateVector &state,
                                              int n_c) {
    if (n_c < 1)
        throw std::invalid_argument("conditional_probabilities: n_c must be >= 1");
    if (state.dim() < 2 * static_cast<std::size_t>(n_c))
        throw std::invalid_argument(
            "conditional_probabilities: state too small for n_c nodes");
    std::vector<double> even, odd, p(n_c);
    pair_masses(state, n_c, even, odd);
    for (int i = 0; i < n_c; ++i) {
        const double denom = even[i] + odd[i];
        p[i] = denom < kMassFloor ? 0.5 : odd[i] / denom;
    }
    return p;
}

double relaxed_cost(const WeightedGraph &graph, const std::vector<double> &p) {
    if (static_cast<int>(p.size()) != graph.num_nodes)
        throw std::invalid_argument("relaxed_cost: probability size mismatch");
    for (double v : p)
        if (!(v >= -1e-9) || !(v <= 1.0 + 1e-9))
            throw std::invalid_argument("relaxed_cost: probability outside [0, 1]");
    double cost = 0.0;
    for (const Edge &e : graph.edges) {
        const double d = p[e.i] - p[e.j];
        cost -= e.weight * d * d;
    }
    return cost;
}

BinaryAssignment decode_solution(const std::vector<double> &p) {
    BinaryAssignment x(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        x[i] = p[i] > 0.5 ? 1 : 0;
    return x;
}

std::vector<double> quenc_gradient(const WeightedGraph &graph,
                                   const AnsatzSpec &ansatz,
                                   const std::vector<double> &params,
                                   GradMode mode, double fd_step) {
    validate_graph(graph);
    const int n_c = graph.num_nodes;
    const std::size_t count = ansatz.param_count();
    if (params.size() != count)
        throw std::invalid_argument("quenc_gradient: parameter count mismatch");

    if (mode == GradMode::finite_difference) {
        auto cost_of = [&](const std::vector<double> &theta) {
            const StateVector state = run_circuit(ansatz, theta);
            return relaxed_cost(graph, conditional_probabilities(state, n_c));
        };
        return finite_diff_grad(cost_of, params, fd_step);
    }

    const StateVector base = run_circuit(ansatz, params);
    std::vector<double> even, odd;
    pair_masses(base, n_c, even, odd);
    std::vector<double> p(n_c), denom(n_c);
    for (int i = 0; i < n_c; ++i) {
        denom[i] = even[i] + odd[i];
        p[i] = denom[i] < kMassFloor ? 0.5 : odd[i] / denom[i];
    }
    // dC/dp_i = -2 sum_j d_ij (p_i - p_j)
    std::vector<double> dcdp(n_c, 0.0);
    for (const Edge &e : graph.edges) {
        const double d = p[e.i] - p[e.j];
        dcdp[e.i] -= 2.0 * e.weight * d;
        dcdp[e.j] += 2.0 * e.weight * d;
    }

    // Each parameter feeds exactly one rotation gate, so the +-pi/2 shift
    // rule differentiates the projector expectations exactly; p_i follows by
    // the quotient rule.
    std::vector<double> grad(count, 0.0);
    std::vector<double> shifted = params;
    std::vector<double> even_p, odd_p, even_m, odd_m;
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (std::size_t k = 0; k < count; ++k) {
        shifted[k] = params[k] + half_pi;
        pair_masses(run_circuit(ansatz, shifted), n_c, even_p, odd_p);
        shifted[k] = params[k] - half_pi;
        pair_masses(run_circuit(ansatz, shifted), n_c, even_m, odd_m);
        shifted[k] = params[k];
        double g = 0.0;
        for (int i = 0; i < n_c; ++i) {
            if (denom[i] < kMassFloor)
                continue;
            const double d_odd = 0.5 * (odd_p[i] - odd_m[i]);
            const double d_even = 0.5 * (even_p[i] - even_m[i]);
            const double dp =
                (d_odd * denom[i] - odd[i] * (d_odd + d_even)) /
                (denom[i] * denom[i]);
            g += dcdp[i] * dp;
        }
        grad[k] = g;
    }
    return grad;
}

OptResult quenc_optimize(const WeightedGraph &graph, const QuencConfig &config) {
    validate_graph(graph);
    if (graph.num_nodes < 2)
        throw std::invalid_argument("quenc_optimize: need at least 2 nodes");
    if (config.max_iters < 1)
        throw std::invalid_argument("quenc_optimize: max_iters must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const AnsatzSpec ansatz = build_ansatz(graph.num_nodes, config.layers);
    const std::size_t count = ansatz.param_count();

    Rng rng(config.seed);
    std::vector<double> params(count);
    for (double &v : params)
        v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    AdamState adam = make_adam(count, config.learning_rate);

    OptResult res;
    res.best_energy = std::numeric_limits<double>::infinity();
    double prev_cost = std::numeric_limits<double>::quiet_NaN();
    int plateau = 0;
    for (int iter = 0; iter < config.max_iters; ++iter) {
        const StateVector state = run_circuit(ansatz, params);
        const std::vector<double> p =
            conditional_probabilities(state, graph.num_nodes);
        const double cost = relaxed_cost(graph, p);
        const BinaryAssignment x = decode_solution(p);
        const double energy = maxcut_energy(graph, x);
        if (energy < res.best_energy) {
            res.best_energy = energy;
            res.best_x = x;
        }
        const double elapsed =
            std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - t0)
                .count();
        res.trace.push_back({iter, cost, res.best_energy, elapsed});

        if (std::abs(cost - prev_cost) < config.plateau_tol)
            ++plateau;
        else
            plateau = 0;
        prev_cost = cost;
        if (plateau >= config.plateau_iters)
            break;

        const std::vector<double> grad = quenc_gradient(
            graph, ansatz, params, config.grad_mode, config.fd_step);
        adam_update(adam, params, grad);
    }
    return res;
}

OptResult hybrid_pipeline(const WeightedGraph &graph, const QuencConfig &config,
                          const RefineConfig &refine) {
    OptResult res = quenc_optimize(graph, config);
    const int iter_offset =
        res.trace.empty() ? 0 : res.trace.back().iter + 1;
    const double ms_offset = res.trace.empty() ? 0.0 : res.trace.back().elapsed_ms;

    OptResult stage;
    BinaryAssignment x;
    double energy = 0.0;
    if (refine.method == RefineMethod::local_search)
        std::tie(x, energy) = local_search_1flip(graph, res.best_x, &stage);
    else
        std::tie(x, energy) =
            simulated_annealing(graph, refine.schedule, res.best_x, &stage);

    double best = res.best_energy;
    for (const TracePoint &t : stage.trace) {
        best = std::min(best, t.energy);
        res.trace.push_back(
            {iter_offset + t.iter, t.cost, best, ms_offset + t.elapsed_ms});
    }
    if (energy <= res.best_energy) {
        res.best_energy = energy;
        res.best_x = x;
    }
    return res;
}

} // namespace hqw
