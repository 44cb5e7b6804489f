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

#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "hqw/classical_opt.hpp"
#include "hqw/optim.hpp"
#include "hqw/quenc.hpp"
#include "hqw/rng.hpp"
#include "hqw/statevector.hpp"

using namespace hqw;

namespace {

double cost_of_params(const WeightedGraph &g, const AnsatzSpec &ansatz,
                      const std::vector<double> &params) {
    const StateVector state = run_circuit(ansatz, params);
    const std::vector<double> p =
        conditional_probabilities(state, g.num_nodes);
    return relaxed_cost(g, p);
}

std::vector<double> random_params(int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> params(count);
    for (auto &v : params) {
        v = rng.uniform(0.0, 2.0 * M_PI);
    }
    return params;
}

} // namespace

TEST_CASE("ansatz uses one ancilla plus ceil(log2 n) address qubits") {
    const AnsatzSpec a4 = build_ansatz(4, 3);
    CHECK(a4.num_qubits == 3);
    CHECK(a4.layers == 3);
    CHECK(a4.param_count() == 9);
    CHECK(a4.initial_superposition);
    REQUIRE(a4.entangling.size() == 3);
    // CNOT chain 0 -> 1 -> 2 in every layer.
    for (const auto &layer : a4.entangling) {
        REQUIRE(layer.size() == 2);
        CHECK(layer[0] == std::make_pair(0, 1));
        CHECK(layer[1] == std::make_pair(1, 2));
    }

    CHECK(build_ansatz(5, 2).num_qubits == 4);
    CHECK(build_ansatz(16, 8).num_qubits == 5);
    CHECK(build_ansatz(64, 8).num_qubits == 7);
}

TEST_CASE("conditional probabilities read amplitude pairs") {
    StateVector state;
    state.num_qubits = 2;
    state.amplitudes = {std::sqrt(0.1), std::sqrt(0.3), std::sqrt(0.6), 0.0};
    const std::vector<double> p = conditional_probabilities(state, 2);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("a pair with no mass falls back to one half") {
    StateVector state;
    state.num_qubits = 2;
    state.amplitudes = {1.0, 0.0, 0.0, 0.0};
    const std::vector<double> p = conditional_probabilities(state, 2);
    CHECK(p[1] == doctest::Approx(0.5));
}

TEST_CASE("relaxed cost at binary corners equals the cut energy") {
    const WeightedGraph g = random_weighted_graph(8, 12);
    for (unsigned mask = 0; mask < 256; mask += 11) {
        BinaryAssignment x(8);
        std::vector<double> p(8);
        for (int i = 0; i < 8; ++i) {
            x[i] = (mask >> i) & 1U;
            p[i] = x[i];
        }
        CHECK(relaxed_cost(g, p) ==
              doctest::Approx(maxcut_energy(g, x)).epsilon(1e-12));
    }
}

TEST_CASE("relaxed cost is concave along the center direction") {
    // Moving from the uniform point toward any corner cannot increase the
    // cost: corners are the minima of a concave function.
    const WeightedGraph g = random_weighted_graph(6, 2);
    const std::vector<double> center(6, 0.5);
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> corner(6);
        for (auto &v : corner) {
            v = rng.uniform() < 0.5 ? 0.0 : 1.0;
        }
        double prev = relaxed_cost(g, center);
        for (double t = 0.25; t <= 1.0; t += 0.25) {
            std::vector<double> p(6);
            for (int i = 0; i < 6; ++i) {
                p[i] = (1 - t) * center[i] + t * corner[i];
            }
            const double c = relaxed_cost(g, p);
            CHECK(c <= prev + 1e-12);
            prev = c;
        }
    }
}

TEST_CASE("decode thresholds probabilities at one half") {
    const BinaryAssignment x = decode_solution({0.1, 0.9, 0.5, 0.51});
    CHECK(x == BinaryAssignment{0, 1, 0, 1});
}

TEST_CASE("parameter-shift gradient matches finite differences") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const int n = 4 + static_cast<int>(seed % 3);
        const WeightedGraph g = random_weighted_graph(n, 100 + seed);
        const AnsatzSpec ansatz = build_ansatz(n, 2);
        const std::vector<double> params =
            random_params(ansatz.param_count(), seed);

        const std::vector<double> shift =
            quenc_gradient(g, ansatz, params, GradMode::parameter_shift);
        const std::vector<double> fd = finite_diff_grad(
            [&](const std::vector<double> &p) { return cost_of_params(g, ansatz, p); },
            params, 1e-6);

        REQUIRE(shift.size() == fd.size());
        double num = 0.0;
        double den = 0.0;
        for (std::size_t k = 0; k < fd.size(); ++k) {
            num += (shift[k] - fd[k]) * (shift[k] - fd[k]);
            den += fd[k] * fd[k];
        }
        CHECK(std::sqrt(num) <= 1e-6 * std::sqrt(den) + 1e-12);
    }
}

TEST_CASE("the built-in finite-difference mode agrees with the exact rule") {
    const WeightedGraph g = random_weighted_graph(5, 55);
    const AnsatzSpec ansatz = build_ansatz(5, 2);
    const std::vector<double> params = random_params(ansatz.param_count(), 3);
    const std::vector<double> shift =
        quenc_gradient(g, ansatz, params, GradMode::parameter_shift);
    const std::vector<double> fd =
        quenc_gradient(g, ansatz, params, GradMode::finite_difference, 1e-5);
    for (std::size_t k = 0; k < shift.size(); ++k) {
        CHECK(shift[k] == doctest::Approx(fd[k]).epsilon(1e-5));
    }
}

TEST_CASE("optimizer trace keeps the best decoded energy non-increasing") {
    const WeightedGraph g = random_weighted_graph(6, 9);
    QuencConfig config;
    config.layers = 4;
    config.max_iters = 200;
    config.seed = 1;
    const OptResult result = quenc_optimize(g, config);

    REQUIRE(!result.trace.empty());
    CHECK(static_cast<int>(result.trace.size()) <= config.max_iters);
    for (std::size_t k = 1; k < result.trace.size(); ++k) {
        CHECK(result.trace[k].energy <= result.trace[k - 1].energy + 1e-12);
    }
    CHECK(result.best_energy == doctest::Approx(result.trace.back().energy));
    CHECK(maxcut_energy(g, result.best_x) ==
          doctest::Approx(result.best_energy).epsilon(1e-10));
}

TEST_CASE("optimizer runs are deterministic for a fixed seed") {
    const WeightedGraph g = random_weighted_graph(6, 14);
    QuencConfig config;
    config.layers = 3;
    config.max_iters = 100;
    config.seed = 4;
    const OptResult a = quenc_optimize(g, config);
    const OptResult b = quenc_optimize(g, config);
    CHECK(a.best_energy == b.best_energy);
    CHECK(a.best_x == b.best_x);
    CHECK(a.trace.size() == b.trace.size());
}

TEST_CASE("pipeline refinement never worsens the variational result") {
    const WeightedGraph g = random_weighted_graph(10, 31);
    QuencConfig config;
    config.layers = 4;
    config.max_iters = 150;
    config.seed = 2;
    const OptResult alone = quenc_optimize(g, config);

    RefineConfig local;
    local.method = RefineMethod::local_search;
    const OptResult refined = hybrid_pipeline(g, config, local);
    CHECK(refined.best_energy <= alone.best_energy + 1e-12);
    CHECK(maxcut_energy(g, refined.best_x) ==
          doctest::Approx(refined.best_energy).epsilon(1e-10));

    RefineConfig anneal;
    anneal.method = RefineMethod::annealing;
    anneal.schedule.sweeps = 300;
    anneal.schedule.seed = config.seed;
    const OptResult annealed = hybrid_pipeline(g, config, anneal);
    CHECK(annealed.best_energy <= alone.best_energy + 1e-12);

    for (std::size_t k = 1; k < refined.trace.size(); ++k) {
        CHECK(refined.trace[k].energy <= refined.trace[k - 1].energy + 1e-12);
    }
}
