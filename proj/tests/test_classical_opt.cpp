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
#include <vector>

#include "hqw/classical_opt.hpp"
#include "hqw/rng.hpp"

using namespace hqw;

namespace {

/// Plain full enumeration, no incremental updates, as an oracle for the
/// Gray-code search.
double naive_minimum(const WeightedGraph &g) {
    const int n = g.num_nodes;
    double best = 0.0;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        BinaryAssignment x(n);
        for (int i = 0; i < n; ++i) {
            x[i] = (mask >> i) & 1U;
        }
        const double e = maxcut_energy(g, x);
        if (mask == 0 || e < best) {
            best = e;
        }
    }
    return best;
}

BinaryAssignment random_bits(int n, std::uint64_t seed) {
    Rng rng(seed);
    BinaryAssignment x(n);
    for (auto &b : x) {
        b = rng.uniform() < 0.5 ? 1 : 0;
    }
    return x;
}

bool one_flip_optimal(const WeightedGraph &g, const BinaryAssignment &x) {
    const double e = maxcut_energy(g, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        BinaryAssignment y = x;
        y[i] ^= 1U;
        if (maxcut_energy(g, y) < e - 1e-12) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("gray-code enumeration matches naive full enumeration") {
    for (int n : {3, 6, 9, 12}) {
        const WeightedGraph g = random_weighted_graph(n, 500 + n);
        const auto [x, energy] = brute_force_qubo(g);
        CHECK(energy == doctest::Approx(naive_minimum(g)).epsilon(1e-10));
        // The reported energy belongs to the reported assignment.
        CHECK(maxcut_energy(g, x) == doctest::Approx(energy).epsilon(1e-10));
    }
}

TEST_CASE("brute force fills a single-point trace when asked") {
    const WeightedGraph g = random_weighted_graph(5, 1);
    OptResult result;
    const auto [x, energy] = brute_force_qubo(g, &result);
    CHECK(result.best_energy == doctest::Approx(energy));
    REQUIRE(!result.trace.empty());
    CHECK(result.trace.back().energy == doctest::Approx(energy));
}

TEST_CASE("local search never worsens the start and stops 1-flip optimal") {
    const WeightedGraph g = random_weighted_graph(14, 3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const BinaryAssignment start = random_bits(14, seed);
        const double start_energy = maxcut_energy(g, start);
        const auto [x, energy] = local_search_1flip(g, start);
        CHECK(energy <= start_energy + 1e-12);
        CHECK(maxcut_energy(g, x) == doctest::Approx(energy).epsilon(1e-10));
        CHECK(one_flip_optimal(g, x));
    }
}

TEST_CASE("local search trace energies are non-increasing") {
    const WeightedGraph g = random_weighted_graph(12, 8);
    OptResult result;
    local_search_1flip(g, random_bits(12, 4), &result);
    for (std::size_t k = 1; k < result.trace.size(); ++k) {
        CHECK(result.trace[k].energy <= result.trace[k - 1].energy + 1e-12);
    }
}

TEST_CASE("local search cannot beat the exact optimum") {
    const WeightedGraph g = random_weighted_graph(10, 6);
    const auto [bx, brute] = brute_force_qubo(g);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto [x, energy] = local_search_1flip(g, random_bits(10, seed));
        CHECK(energy >= brute - 1e-12);
    }
}

TEST_CASE("annealing returns the best assignment it visited") {
    const WeightedGraph g = random_weighted_graph(12, 15);
    const auto [bx, brute] = brute_force_qubo(g);
    AnnealSchedule schedule;
    schedule.sweeps = 500;
    schedule.seed = 2;
    const auto [x, energy] = simulated_annealing(g, schedule);
    CHECK(maxcut_energy(g, x) == doctest::Approx(energy).epsilon(1e-10));
    CHECK(energy >= brute - 1e-12);
    // The default schedule should land at or very near the optimum on a
    // problem this small.
    CHECK(energy <= brute + std::abs(brute) * 0.05);
}

TEST_CASE("annealing from an explicit start never reports worse than it") {
    const WeightedGraph g = random_weighted_graph(10, 21);
    const BinaryAssignment start = random_bits(10, 5);
    AnnealSchedule schedule;
    schedule.sweeps = 50;
    schedule.seed = 7;
    const auto [x, energy] = simulated_annealing(g, schedule, start);
    CHECK(energy <= maxcut_energy(g, start) + 1e-12);
}

TEST_CASE("fixed seeds give bit-identical annealing runs") {
    const WeightedGraph g = random_weighted_graph(16, 30);
    AnnealSchedule schedule;
    schedule.sweeps = 200;
    schedule.seed = 11;
    const auto [x1, e1] = simulated_annealing(g, schedule);
    const auto [x2, e2] = simulated_annealing(g, schedule);
    CHECK(e1 == e2);
    CHECK(x1 == x2);
}
