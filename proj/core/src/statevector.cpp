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

#include "hqw/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hqw {

namespace {

using cplx = std::complex<double>;

constexpr int kMaxQubits = 30; // 2^30 complex doubles = 16 GB

void check_qubit_index(const StateVector &state, int q, const char *what) {
    if (q < 0 || q >= state.num_qubits) {
        throw std::invalid_argument(std::string(what) + " index " +
                                    std::to_string(q) + " out of range for " +
                                    std::to_string(state.num_qubits) +
                                    " qubits");
    }
}

// u = [[a, b], [c, d]] applied to `target`.
void apply_single_qubit(StateVector &state, int target, cplx a, cplx b, cplx c,
                        cplx d) {
    const std::size_t stride = std::size_t{1} << target;
    const std::size_t dim = state.dim();
    auto *amp = state.amplitudes.data();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t k0 = base + off;
            const std::size_t k1 = k0 + stride;
            const cplx x0 = amp[k0];
            const cplx x1 = amp[k1];
            amp[k0] = a * x0 + b * x1;
            amp[k1] = c * x0 + d * x1;
        }
    }
}

void apply_cnot(StateVector &state, int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t dim = state.dim();
    auto *amp = state.amplitudes.data();
    for (std::size_t k = 0; k < dim; ++k) {
        if ((k & cbit) && !(k & tbit)) {
            std::swap(amp[k], amp[k | tbit]);
        }
    }
}

void apply_cz(StateVector &state, int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t dim = state.dim();
    auto *amp = state.amplitudes.data();
    for (std::size_t k = 0; k < dim; ++k) {
        if ((k & cbit) && (k & tbit)) {
            amp[k] = -amp[k];
        }
    }
}

GateSpec rotation_gate(RotationAxis axis, int qubit, double angle) {
    switch (axis) {
    case RotationAxis::X:
        return GateSpec::rx(qubit, angle);
    case RotationAxis::Z:
        return GateSpec::rz(qubit, angle);
    case RotationAxis::Y:
    default:
        return GateSpec::ry(qubit, angle);
    }
}

} // namespace

StateVector init_zero(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(num_qubits));
    }
    StateVector state;
    state.num_qubits = num_qubits;
    state.amplitudes.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    state.amplitudes[0] = cplx{1.0, 0.0};
    return state;
}

void apply_gate_in_place(StateVector &state, const GateSpec &gate) {
    check_qubit_index(state, gate.target, "target");
    const bool two_qubit =
        gate.kind == GateKind::CNOT || gate.kind == GateKind::CZ;
    if (two_qubit) {
        if (gate.control < 0) {
            throw std::invalid_argument("two-qubit gate requires a control");
        }
        check_qubit_index(state, gate.control, "control");
        if (gate.control == gate.target) {
            throw std::invalid_argument("control and target must differ");
        }
    }
    if (!two_qubit && gate.kind != GateKind::H && !std::isfinite(gate.angle)) {
        throw std::invalid_argument("rotation angle must be finite");
    }

    switch (gate.kind) {
    case GateKind::H: {
        const double s = 1.0 / std::sqrt(2.0);
        apply_single_qubit(state, gate.target, {s, 0}, {s, 0}, {s, 0},
                           {-s, 0});
        break;
    }
    case GateKind::RX: {
        const double c = std::cos(0.5 * gate.angle);
        const double s = std::sin(0.5 * gate.angle);
        apply_single_qubit(state, gate.target, {c, 0}, {0, -s}, {0, -s},
                           {c, 0});
        break;
    }
    case GateKind::RY: {
        const double c = std::cos(0.5 * gate.angle);
        const double s = std::sin(0.5 * gate.angle);
        apply_single_qubit(state, gate.target, {c, 0}, {-s, 0}, {s, 0},
                           {c, 0});
        break;
    }
    case GateKind::RZ: {
        const double c = std::cos(0.5 * gate.angle);
        const double s = std::sin(0.5 * gate.angle);
        apply_single_qubit(state, gate.target, {c, -s}, {0, 0}, {0, 0},
                           {c, s});
        break;
    }
    case GateKind::CNOT:
        apply_cnot(state, gate.control, gate.target);
        break;
    case GateKind::CZ:
        apply_cz(state, gate.control, gate.target);
        break;
    }
}

StateVector apply_gate(StateVector state, const GateSpec &gate) {
    apply_gate_in_place(state, gate);
    return state;
}

StateVector run_circuit(const AnsatzSpec &ansatz,
                        const std::vector<double> &params) {
    if (static_cast<int>(params.size()) != ansatz.param_count()) {
        throw std::invalid_argument(
            "parameter count mismatch: ansatz wants " +
            std::to_string(ansatz.param_count()) + ", got " +
            std::to_string(params.size()));
    }
    StateVector state = init_zero(ansatz.num_qubits);
    if (ansatz.initial_superposition) {
        for (int q = 0; q < ansatz.num_qubits; ++q) {
            apply_gate_in_place(state, GateSpec::h(q));
        }
    }
    std::size_t p = 0;
    for (int layer = 0; layer < ansatz.layers; ++layer) {
        const RotationAxis axis =
            layer < static_cast<int>(ansatz.rotation_axis.size())
                ? ansatz.rotation_axis[layer]
                : RotationAxis::Y;
        for (int q = 0; q < ansatz.num_qubits; ++q) {
            apply_gate_in_place(state, rotation_gate(axis, q, params[p++]));
        }
        if (layer < static_cast<int>(ansatz.entangling.size())) {
            for (const auto &[control, target] : ansatz.entangling[layer]) {
                apply_gate_in_place(state, GateSpec::cnot(control, target));
            }
        }
    }
    return state;
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> probs(state.dim());
    for (std::size_t k = 0; k < probs.size(); ++k) {
        probs[k] = std::norm(state.amplitudes[k]);
    }
    return probs;
}

double expectation_z(const StateVector &state, int qubit) {
    check_qubit_index(state, qubit, "qubit");
    const std::size_t bit = std::size_t{1} << qubit;
    double z = 0.0;
    for (std::size_t k = 0; k < state.dim(); ++k) {
        const double p = std::norm(state.amplitudes[k]);
        z += (k & bit) ? -p : p;
    }
    return z;
}

double state_norm(const StateVector &state) {
    double sum = 0.0;
    for (const auto &a : state.amplitudes) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

} // namespace hqw
