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
 * Finite-difference Poisson problems in quantized tensor-train form.
 *
 * -laplace(u) = 1 with zero Dirichlet boundaries on the unit interval or
 * cube, discretized on 2^d interior points per axis with spacing
 * h = 1 / (2^d + 1). Grid point i maps to x = (i + 1) * h.
 *
 * The 1D stiffness matrix (2I - S - S^T) / h^2 has an exact rank-3
 * quantized representation: with J the upper shift on one bit, the up-shift
 * on d bits telescopes as S = sum_k I^k x J x (J^T)^(d-1-k), giving cores
 *   first  [I, -J, -J^T]
 *   middle [[I, -J, -J^T], [0, J^T, 0], [0, 0, J]]
 *   last   [2I - J - J^T; J^T; J] / h^2.
 * The 3D operator is the Kronecker sum A x I x I + I x A x I + I x I x A
 * over cores ordered z bits, y bits, x bits, matching the dense flattening
 * idx = (i_z * 2^d + i_y) * 2^d + i_x (x fastest).
 */

#pragma once

#include <vector>

#include "hqw/tensortrain.hpp"

namespace hqw {

/// 1D Dirichlet Laplacian on 2^d points; d cores, operator rank <= 3.
MPO laplacian_mpo_1d(int d);

/// 3D Kronecker-sum Laplacian on (2^d)^3 points; 3d cores, rounded.
MPO laplacian_mpo_3d(int d);

/// u(x) = x (1 - x) / 2 sampled at the interior points. The second
/// difference of a quadratic is exact, so this is also the discrete
/// solution for f = 1.
std::vector<double> exact_solution_1d(int d);

struct PoissonTtResult {
    TTVector solution;
    double residual = 0.0; // relative to ||b||
    int sweeps = 0;
    int max_rank = 0;
    bool converged = false;
    double wall_ms = 0.0;
};

/// amen_solve on the 1D problem with the all-ones right-hand side.
PoissonTtResult solve_poisson_tt_1d(int d, const AmenOptions &opts = {});
/// Same for the 3D problem; the solution train has 3d cores.
PoissonTtResult solve_poisson_tt_3d(int d, const AmenOptions &opts = {});

struct CgResult {
    std::vector<double> solution; // x fastest, then y, then z
    double residual = 0.0;        // relative to ||b||
    int iterations = 0;
    bool converged = false;
    double wall_ms = 0.0;
};

/// Matrix-free conjugate gradient with the 7-point stencil, f = 1. The grid
/// has (2^d)^3 points; d <= 9 keeps the four work vectors under 8 GiB.
CgResult cg_solve_3d(int d, double tol = 1e-8, int max_iters = 0);

/// Dense conjugate gradient for the 1D problem on 2^d interior points,
/// d in [1, 24]. Same conventions as the 3D variant.
CgResult cg_solve_1d(int d, double tol = 1e-8, int max_iters = 0);

} // namespace hqw
