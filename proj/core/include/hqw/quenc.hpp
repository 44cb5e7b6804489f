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
 * Amplitude-encoding variational optimizer for MaxCut.
 *
 * One ancilla qubit (qubit 0) plus m = ceil(log2 n_c) address qubits encode
 * n_c soft bits in a single state: node i maps to the amplitude pair at
 * basis indices (2i, 2i+1) and its soft value is the conditional probability
 *   p_i = |a_{2i+1}|^2 / (|a_{2i}|^2 + |a_{2i+1}|^2).
 * Training minimizes the relaxed cost -sum_{i<j} d_ij (p_i - p_j)^2, which
 * is concave in p, so minima sit at binary corners and rounding p recovers a
 * cut.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "hqw/classical_opt.hpp"
#include "hqw/opt_result.hpp"
#include "hqw/qubo.hpp"
#include "hqw/statevector.hpp"

namespace hqw {

enum class GradMode {
    parameter_shift, // exact: projector shifts combined through the quotient rule
    finite_difference,
};

struct QuencConfig {
    int layers = 20;
    double learning_rate = 1.0; // aggressive on purpose: the reported answer is the
                                // best decoded assignment along the whole trajectory
    int max_iters = 2000;
    GradMode grad_mode = GradMode::parameter_shift;
    std::uint64_t seed = 0;
    double plateau_tol = 1e-9; // cost change below this counts as a plateau step
    int plateau_iters = 50;    // consecutive plateau steps before stopping
    double fd_step = 1e-5;
};

enum class RefineMethod { local_search, annealing };

struct RefineConfig {
    RefineMethod method = RefineMethod::local_search;
    AnnealSchedule schedule; // used when method == annealing
};

/// ceil(log2 n_c) address qubits + 1 ancilla; a Hadamard wall, then per layer
/// one RY rotation on every qubit followed by the CNOT chain q -> q+1.
AnsatzSpec build_ansatz(int n_c, int layers);

/// p_i for i in [0, n_c). Pairs with negligible mass (denominator < 1e-12)
/// report p_i = 0.5.
std::vector<double> conditional_probabilities(const StateVector &state, int n_c);

/// -sum_{i<j} d_ij (p_i - p_j)^2 over the graph edges.
double relaxed_cost(const WeightedGraph &graph, const std::vector<double> &p);

/// x_i = 1 iff p_i > 0.5.
BinaryAssignment decode_solution(const std::vector<double> &p);

/// Gradient of relaxed_cost(graph, p(params)) with respect to params.
///
/// The rotation-shift rule is exact for the raw projector expectations
/// N_i = |a_{2i+1}|^2 and M_i = |a_{2i}|^2 (each parameter enters one RY
/// gate), so the conditional probability p_i = N_i / (N_i + M_i) is
/// differentiated by shifting N and M and applying the quotient rule, not by
/// shifting p itself.
std::vector<double> quenc_gradient(const WeightedGraph &graph,
                                   const AnsatzSpec &ansatz,
                                   const std::vector<double> &params,
                                   GradMode mode = GradMode::parameter_shift,
                                   double fd_step = 1e-5);

/// Adam on the relaxed cost. Every iteration decodes the current state, and
/// the trace keeps the best decoded energy seen so far (non-increasing).
/// Stops early after `plateau_iters` consecutive cost changes below
/// `plateau_tol`.
OptResult quenc_optimize(const WeightedGraph &graph, const QuencConfig &config);

/// quenc_optimize, then classical refinement from the decoded assignment.
/// The refinement can only improve the energy, so the combined trace stays
/// non-increasing.
OptResult hybrid_pipeline(const WeightedGraph &graph, const QuencConfig &config,
                          const RefineConfig &refine);

} // namespace hqw
