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
 * Dense state-vector simulation of parameterized quantum circuits.
 *
 * Conventions used throughout: basis index k = sum_q b_q * 2^q with qubit 0
 * least significant;
 *   RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
 *   RX(t) = [[cos t/2, -i sin t/2], [-i sin t/2, cos t/2]]
 *   RZ(t) = diag(exp(-i t/2), exp(+i t/2))
 */

#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace hqw {

/// Dense amplitude array over the 2^n computational basis states.
struct StateVector {
    int num_qubits = 0;
    std::vector<std::complex<double>> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
};

enum class GateKind { H, RX, RY, RZ, CNOT, CZ };

/// A single gate: kind, target, optional control, optional angle.
struct GateSpec {
    GateKind kind = GateKind::H;
    int target = 0;
    int control = -1;   // >= 0 only for CNOT / CZ
    double angle = 0.0; // used only by RX / RY / RZ

    static GateSpec h(int target) { return {GateKind::H, target, -1, 0.0}; }
    static GateSpec rx(int target, double angle) {
        return {GateKind::RX, target, -1, angle};
    }
    static GateSpec ry(int target, double angle) {
        return {GateKind::RY, target, -1, angle};
    }
    static GateSpec rz(int target, double angle) {
        return {GateKind::RZ, target, -1, angle};
    }
    static GateSpec cnot(int control, int target) {
        return {GateKind::CNOT, target, control, 0.0};
    }
    static GateSpec cz(int control, int target) {
        return {GateKind::CZ, target, control, 0.0};
    }
};

enum class RotationAxis { X, Y, Z };

/**
 * Layered hardware-efficient ansatz: an optional wall of Hadamards, then per
 * layer one rotation on every qubit followed by a fixed entangling pattern.
 * Parameter count is num_qubits * layers.
 */
struct AnsatzSpec {
    int num_qubits = 0;
    int layers = 1;
    /// Entangling pattern per layer as ordered (control, target) CNOT pairs.
    std::vector<std::vector<std::pair<int, int>>> entangling;
    /// Rotation axis per layer; Y if the vector is shorter than `layers`.
    std::vector<RotationAxis> rotation_axis;
    bool initial_superposition = true;

    int param_count() const { return num_qubits * layers; }
};

/// |0...0> on `num_qubits` qubits. Valid range is 1..30.
StateVector init_zero(int num_qubits);

/// Apply one gate, returning the transformed state.
StateVector apply_gate(StateVector state, const GateSpec &gate);

/// In-place variant used by hot loops.
void apply_gate_in_place(StateVector &state, const GateSpec &gate);

/// Run the ansatz from |0...0> with the given rotation angles.
StateVector run_circuit(const AnsatzSpec &ansatz,
                        const std::vector<double> &params);

/// |amplitude_k|^2 for every basis state; sums to 1.
std::vector<double> probabilities(const StateVector &state);

/// <Z> on one qubit: sum of +/- |a_k|^2, positive where bit q of k is 0.
double expectation_z(const StateVector &state, int qubit);

/// Euclidean norm of the amplitude vector.
double state_norm(const StateVector &state);

} // namespace hqw
