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

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "dense_reference.hpp"
#include "hqw/rng.hpp"
#include "hqw/statevector.hpp"

using namespace hqw;
using testing::Cd;

namespace {

/// Random normalized state used to exercise gates away from |0...0>.
StateVector random_state(int num_qubits, Rng &rng) {
    StateVector s = init_zero(num_qubits);
    double norm2 = 0.0;
    for (auto &a : s.amplitudes) {
        a = Cd{rng.normal(), rng.normal()};
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &a : s.amplitudes) {
        a *= inv;
    }
    return s;
}

double max_abs_diff(const std::vector<Cd> &a, const std::vector<Cd> &b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

} // namespace

TEST_CASE("init_zero puts all amplitude in the first basis state") {
    const StateVector s = init_zero(3);
    CHECK(s.num_qubits == 3);
    CHECK(s.dim() == 8);
    CHECK(s.amplitudes[0] == Cd{1.0, 0.0});
    for (std::size_t k = 1; k < s.dim(); ++k) {
        CHECK(s.amplitudes[k] == Cd{0.0, 0.0});
    }
}

TEST_CASE("single gates match their textbook matrices") {
    // H|0> = (|0> + |1>)/sqrt(2)
    StateVector s = apply_gate(init_zero(1), GateSpec::h(0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amplitudes[0] - Cd{inv_sqrt2, 0.0}) < 1e-15);
    CHECK(std::abs(s.amplitudes[1] - Cd{inv_sqrt2, 0.0}) < 1e-15);

    // RY(pi)|0> = |1>
    s = apply_gate(init_zero(1), GateSpec::ry(0, M_PI));
    CHECK(std::abs(s.amplitudes[0]) < 1e-15);
    CHECK(std::abs(s.amplitudes[1] - Cd{1.0, 0.0}) < 1e-15);

    // RX(pi)|0> = -i|1>
    s = apply_gate(init_zero(1), GateSpec::rx(0, M_PI));
    CHECK(std::abs(s.amplitudes[1] - Cd{0.0, -1.0}) < 1e-15);

    // CNOT flips the target only when the control bit is set.
    s = init_zero(2);
    s = apply_gate(s, GateSpec::rx(0, M_PI)); // |01>, qubit 0 set
    s = apply_gate(s, GateSpec::cnot(0, 1));
    CHECK(std::abs(s.amplitudes[3]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random circuits on small registers match the dense oracle") {
    Rng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 4;
        StateVector lib = random_state(n, rng);
        std::vector<Cd> ref = lib.amplitudes;
        for (int g = 0; g < 30; ++g) {
            const GateSpec gate = testing::random_gate(rng, n);
            lib = apply_gate(std::move(lib), gate);
            ref = testing::matvec(testing::dense_gate(gate, n), ref);
        }
        worst = std::max(worst, max_abs_diff(lib.amplitudes, ref));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("full circuit unitary equals the dense gate product") {
    Rng rng(11);
    for (int n = 2; n <= 4; ++n) {
        std::vector<GateSpec> gates;
        for (int g = 0; g < 25; ++g) {
            gates.push_back(testing::random_gate(rng, n));
        }
        testing::DenseMatrix u = testing::dense_identity(std::size_t{1} << n);
        for (const GateSpec &gate : gates) {
            u = testing::matmul(testing::dense_gate(gate, n), u);
        }
        StateVector lib = init_zero(n);
        for (const GateSpec &gate : gates) {
            apply_gate_in_place(lib, gate);
        }
        // First column of the accumulated unitary is the image of |0...0>.
        std::vector<Cd> ref(u.dim);
        for (std::size_t k = 0; k < u.dim; ++k) {
            ref[k] = u.at(k, 0);
        }
        CHECK(max_abs_diff(lib.amplitudes, ref) < 1e-12);
    }
}

TEST_CASE("norm is preserved across long random circuits") {
    Rng rng(23);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        StateVector s = init_zero(10);
        for (int g = 0; g < 100; ++g) {
            apply_gate_in_place(s, testing::random_gate(rng, 10));
        }
        worst = std::max(worst, std::abs(state_norm(s) - 1.0));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("probabilities sum to one and match amplitudes") {
    Rng rng(3);
    StateVector s = random_state(5, rng);
    const std::vector<double> p = probabilities(s);
    REQUIRE(p.size() == s.dim());
    double total = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        CHECK(p[k] == doctest::Approx(std::norm(s.amplitudes[k])).epsilon(1e-12));
        total += p[k];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("expectation_z reads the signed bit populations") {
    // RX(t)|0> has P(1) = sin^2(t/2), so <Z> = cos t.
    const double t = 1.234;
    StateVector s = apply_gate(init_zero(2), GateSpec::rx(0, t));
    CHECK(expectation_z(s, 0) == doctest::Approx(std::cos(t)).epsilon(1e-12));
    CHECK(expectation_z(s, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_circuit reproduces a manual gate sequence") {
    AnsatzSpec ansatz;
    ansatz.num_qubits = 3;
    ansatz.layers = 2;
    ansatz.entangling = {{{0, 1}, {1, 2}}, {{0, 1}, {1, 2}}};
    ansatz.initial_superposition = true;

    const std::vector<double> params = {0.3, -0.7, 1.1, 0.2, 2.5, -1.9};
    const StateVector got = run_circuit(ansatz, params);

    StateVector want = init_zero(3);
    for (int q = 0; q < 3; ++q) {
        apply_gate_in_place(want, GateSpec::h(q));
    }
    int p = 0;
    for (int layer = 0; layer < 2; ++layer) {
        for (int q = 0; q < 3; ++q) {
            apply_gate_in_place(want, GateSpec::ry(q, params[p++]));
        }
        apply_gate_in_place(want, GateSpec::cnot(0, 1));
        apply_gate_in_place(want, GateSpec::cnot(1, 2));
    }
    CHECK(max_abs_diff(got.amplitudes, want.amplitudes) < 1e-14);
}
