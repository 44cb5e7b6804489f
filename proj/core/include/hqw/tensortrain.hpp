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
 * Tensor-train vectors and matrix product operators.
 *
 * A TTVector stores a length prod(modes) vector as a chain of cores
 * G_k[r_k, m_k, r_{k+1}] with boundary ranks 1. Core 0 carries the most
 * significant digit of the dense index:
 *   v[i] = G_0[m_0] G_1[m_1] ... ,  i = sum_k m_k * prod_{l>k} mode_l.
 * Quantized vectors use mode 2 everywhere, so a 2^D vector needs D cores.
 *
 * An MPO stores a square operator the same way with one row and one column
 * index per core: W_k[R_k, i_k, j_k, R_{k+1}], all modes 2.
 *
 * amen_solve solves A x = b for symmetric positive definite A by
 * alternating one-core Galerkin updates, expanding the basis each sweep
 * with a low-rank approximation of the current residual before the update
 * pass, and truncating afterwards.
 */

#pragma once

#include <cstdint>
#include <vector>

namespace hqw {

struct TTCore {
    int rank_left = 1;
    int mode = 2;
    int rank_right = 1;
    std::vector<double> values; // (rank_left, mode, rank_right) row-major

    double at(int a, int m, int b) const {
        return values[(static_cast<std::size_t>(a) * mode + m) * rank_right + b];
    }
    double &at(int a, int m, int b) {
        return values[(static_cast<std::size_t>(a) * mode + m) * rank_right + b];
    }
};

struct TTVector {
    std::vector<TTCore> cores;

    int num_cores() const { return static_cast<int>(cores.size()); }
    /// Bond ranks including the boundary 1s; length num_cores() + 1.
    std::vector<int> ranks() const;
    int max_rank() const;
    /// Product of the mode sizes.
    std::size_t dense_size() const;
};

struct MpoCore {
    int rank_left = 1;
    int rank_right = 1;
    std::vector<double> values; // (rank_left, 2 row, 2 col, rank_right)

    double at(int a, int i, int j, int b) const {
        return values[((static_cast<std::size_t>(a) * 2 + i) * 2 + j) *
                          rank_right +
                      b];
    }
    double &at(int a, int i, int j, int b) {
        return values[((static_cast<std::size_t>(a) * 2 + i) * 2 + j) *
                          rank_right +
                      b];
    }
};

struct MPO {
    std::vector<MpoCore> cores;

    int num_cores() const { return static_cast<int>(cores.size()); }
    int max_rank() const;
};

/// All-ones vector at rank 1.
TTVector tt_ones(int num_cores, int mode = 2);

/// Cores filled with uniform [-1, 1] entries, ranks clipped to feasible.
TTVector tt_random(int num_cores, int rank, std::uint64_t seed, int mode = 2);

/// Successive truncated SVDs. The result satisfies
/// ||tt - v|| <= tol * ||v|| (Frobenius), threshold split evenly over bonds.
TTVector tt_from_dense(const std::vector<double> &v, int num_cores, double tol,
                       int mode = 2);

/// Full contraction; dense_size() must not exceed 2^24.
std::vector<double> tt_to_dense(const TTVector &x);

double tt_dot(const TTVector &a, const TTVector &b);

/// Norm via orthogonalization, accurate even when tt_dot(x, x) would cancel.
double tt_norm(const TTVector &x);

/// alpha * a + beta * b by block concatenation; ranks add.
TTVector tt_add(const TTVector &a, const TTVector &b, double alpha = 1.0,
                double beta = 1.0);

TTVector tt_scale(TTVector x, double s);

/// Right-to-left orthogonalization followed by left-to-right truncated SVDs.
/// tol is relative to ||x||; max_rank = 0 means uncapped.
TTVector tt_round(TTVector x, double tol, int max_rank = 0);

MPO mpo_identity(int num_cores);
MPO mpo_add(const MPO &a, const MPO &b);
/// Rounds by fusing row and column indices into one mode-4 train.
MPO mpo_round(const MPO &op, double tol, int max_rank = 0);
/// y = op x; ranks multiply, round afterwards if needed.
TTVector mpo_apply(const MPO &op, const TTVector &x);
/// Row-major 2^D x 2^D matrix; D must not exceed 12.
std::vector<double> mpo_to_dense(const MPO &op);

struct AmenOptions {
    int max_sweeps = 50;
    double tol = 1e-8;    // target relative residual ||b - A x|| / ||b||
    int max_rank = 40;    // solution rank cap after each sweep
    int enrich_rank = 4;  // rank of the residual enrichment
    double round_tol = 0.0; // 0: use tol / 10
    int local_direct_dim = 400; // dense local solve at or below this size
    int local_cg_iters = 400;
    double local_cg_tol = 1e-8;
    int stagnation_sweeps = 4;
};

struct AmenResult {
    TTVector x;
    double residual = 0.0; // relative; the reported value is the best seen
    int sweeps = 0;
    bool converged = false;
    std::vector<double> residual_history; // one entry per sweep
};

AmenResult amen_solve(const MPO &a, const TTVector &b,
                      const AmenOptions &opts = {});

} // namespace hqw
