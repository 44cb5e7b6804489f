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

#include "hqw/poisson.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace hqw {

namespace {

double elapsed_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

enum Block { kIdent, kShiftUp, kShiftDown }; // I, J, J^T on one bit

void put_block(MpoCore &core, int a, int b, Block block, double scale) {
    switch (block) {
    case kIdent:
        core.at(a, 0, 0, b) += scale;
        core.at(a, 1, 1, b) += scale;
        break;
    case kShiftUp: // J: row 0, col 1
        core.at(a, 0, 1, b) += scale;
        break;
    case kShiftDown: // J^T: row 1, col 0
        core.at(a, 1, 0, b) += scale;
        break;
    }
}

MpoCore zero_core(int rank_left, int rank_right) {
    MpoCore c;
    c.rank_left = rank_left;
    c.rank_right = rank_right;
    c.values.assign(static_cast<std::size_t>(rank_left) * 4 * rank_right, 0.0);
    return c;
}

std::vector<MpoCore> laplacian_cores_1d(int d) {
    const double n_plus_1 = std::ldexp(1.0, d) + 1.0;
    const double inv_h2 = n_plus_1 * n_plus_1;
    std::vector<MpoCore> cores;
    if (d == 1) {
        MpoCore c = zero_core(1, 1);
        put_block(c, 0, 0, kIdent, 2.0 * inv_h2);
        put_block(c, 0, 0, kShiftUp, -inv_h2);
        put_block(c, 0, 0, kShiftDown, -inv_h2);
        cores.push_back(std::move(c));
        return cores;
    }
    MpoCore first = zero_core(1, 3);
    put_block(first, 0, 0, kIdent, 1.0);
    put_block(first, 0, 1, kShiftUp, -1.0);
    put_block(first, 0, 2, kShiftDown, -1.0);
    cores.push_back(std::move(first));
    for (int k = 1; k + 1 < d; ++k) {
        MpoCore mid = zero_core(3, 3);
        put_block(mid, 0, 0, kIdent, 1.0);
        put_block(mid, 0, 1, kShiftUp, -1.0);
        put_block(mid, 0, 2, kShiftDown, -1.0);
        put_block(mid, 1, 1, kShiftDown, 1.0);
        put_block(mid, 2, 2, kShiftUp, 1.0);
        cores.push_back(std::move(mid));
    }
    MpoCore last = zero_core(3, 1);
    put_block(last, 0, 0, kIdent, 2.0 * inv_h2);
    put_block(last, 0, 0, kShiftUp, -inv_h2);
    put_block(last, 0, 0, kShiftDown, -inv_h2);
    put_block(last, 1, 0, kShiftDown, inv_h2);
    put_block(last, 2, 0, kShiftUp, inv_h2);
    cores.push_back(std::move(last));
    return cores;
}

std::vector<MpoCore> identity_cores(int d) {
    std::vector<MpoCore> cores;
    for (int k = 0; k < d; ++k) {
        MpoCore c = zero_core(1, 1);
        put_block(c, 0, 0, kIdent, 1.0);
        cores.push_back(std::move(c));
    }
    return cores;
}

} // namespace

MPO laplacian_mpo_1d(int d) {
    if (d < 1 || d > 30)
        throw std::invalid_argument("laplacian_mpo_1d: d must be in [1, 30]");
    MPO op;
    op.cores = laplacian_cores_1d(d);
    return op;
}

MPO laplacian_mpo_3d(int d) {
    if (d < 1 || d > 20)
        throw std::invalid_argument("laplacian_mpo_3d: d must be in [1, 20]");
    const std::vector<MpoCore> lap = laplacian_cores_1d(d);
    const std::vector<MpoCore> eye = identity_cores(d);
    auto assemble = [&](int position) {
        MPO op;
        for (int axis = 0; axis < 3; ++axis) {
            const std::vector<MpoCore> &part = axis == position ? lap : eye;
            op.cores.insert(op.cores.end(), part.begin(), part.end());
        }
        return op;
    };
    // Core order is z bits, y bits, x bits; x is the fastest dense index.
    const MPO sum =
        mpo_add(mpo_add(assemble(0), assemble(1)), assemble(2));
    return mpo_round(sum, 1e-13, 0);
}

std::vector<double> exact_solution_1d(int d) {
    if (d < 1 || d > 24)
        throw std::invalid_argument("exact_solution_1d: d must be in [1, 24]");
    const std::size_t n = std::size_t{1} << d;
    const double h = 1.0 / (static_cast<double>(n) + 1.0);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i + 1) * h;
        u[i] = 0.5 * x * (1.0 - x);
    }
    return u;
}

PoissonTtResult solve_poisson_tt_1d(int d, const AmenOptions &opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const MPO a = laplacian_mpo_1d(d);
    const TTVector b = tt_ones(d);
    AmenResult r = amen_solve(a, b, opts);
    PoissonTtResult out;
    out.solution = std::move(r.x);
    out.residual = r.residual;
    out.sweeps = r.sweeps;
    out.max_rank = out.solution.max_rank();
    out.converged = r.converged;
    out.wall_ms = elapsed_ms_since(t0);
    return out;
}

PoissonTtResult solve_poisson_tt_3d(int d, const AmenOptions &opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const MPO a = laplacian_mpo_3d(d);
    const TTVector b = tt_ones(3 * d);
    AmenResult r = amen_solve(a, b, opts);
    PoissonTtResult out;
    out.solution = std::move(r.x);
    out.residual = r.residual;
    out.sweeps = r.sweeps;
    out.max_rank = out.solution.max_rank();
    out.converged = r.converged;
    out.wall_ms = elapsed_ms_since(t0);
    return out;
}

CgResult cg_solve_3d(int d, double tol, int max_iters) {
    if (d < 1 || d > 9)
        throw std::invalid_argument("cg_solve_3d: d must be in [1, 9]");
    if (!(tol > 0.0))
        throw std::invalid_argument("cg_solve_3d: tolerance must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t nx = std::size_t{1} << d;
    const std::size_t n = nx * nx * nx;
    const double inv_h2 =
        (static_cast<double>(nx) + 1.0) * (static_cast<double>(nx) + 1.0);
    if (max_iters <= 0)
        max_iters = static_cast<int>(10 * nx) + 50;

    const std::size_t sy = nx;
    const std::size_t sz = nx * nx;
    auto apply = [&](const std::vector<double> &u, std::vector<double> &out) {
        for (std::size_t iz = 0; iz < nx; ++iz)
            for (std::size_t iy = 0; iy < nx; ++iy) {
                const std::size_t row = iz * sz + iy * sy;
                for (std::size_t ix = 0; ix < nx; ++ix) {
                    const std::size_t c = row + ix;
                    double v = 6.0 * u[c];
                    if (ix > 0)
                        v -= u[c - 1];
                    if (ix + 1 < nx)
                        v -= u[c + 1];
                    if (iy > 0)
                        v -= u[c - sy];
                    if (iy + 1 < nx)
                        v -= u[c + sy];
                    if (iz > 0)
                        v -= u[c - sz];
                    if (iz + 1 < nx)
                        v -= u[c + sz];
                    out[c] = v * inv_h2;
                }
            }
    };

    CgResult result;
    std::vector<double> u(n, 0.0), r(n, 1.0), p(n, 1.0), ap(n);
    const double bnorm = std::sqrt(static_cast<double>(n));
    double rr = static_cast<double>(n);
    int it = 0;
    for (; it < max_iters; ++it) {
        if (std::sqrt(rr) <= tol * bnorm)
            break;
        apply(p, ap);
        double pap = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            pap += p[i] * ap[i];
        if (!(pap > 0.0))
            break;
        const double alpha = rr / pap;
        double rr_next = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
            rr_next += r[i] * r[i];
        }
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t i = 0; i < n; ++i)
            p[i] = r[i] + beta * p[i];
    }
    // Recompute the residual exactly; the recurrence drifts a little.
    apply(u, ap);
    double rnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ri = 1.0 - ap[i];
        rnorm += ri * ri;
    }
    result.residual = std::sqrt(rnorm) / bnorm;
    result.converged = result.residual <= tol;
    result.iterations = it;
    result.solution = std::move(u);
    result.wall_ms = elapsed_ms_since(t0);
    return result;
}

CgResult cg_solve_1d(int d, double tol, int max_iters) {
    if (d < 1 || d > 24)
        throw std::invalid_argument("cg_solve_1d: d must be in [1, 24]");
    if (!(tol > 0.0))
        throw std::invalid_argument("cg_solve_1d: tolerance must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = std::size_t{1} << d;
    const double inv_h2 =
        (static_cast<double>(n) + 1.0) * (static_cast<double>(n) + 1.0);
    if (max_iters <= 0)
        max_iters = static_cast<int>(std::min<std::size_t>(n, 2000000)) + 50;

    auto apply = [&](const std::vector<double> &u, std::vector<double> &out) {
        for (std::size_t i = 0; i < n; ++i) {
            double v = 2.0 * u[i];
            if (i > 0)
                v -= u[i - 1];
            if (i + 1 < n)
                v -= u[i + 1];
            out[i] = v * inv_h2;
        }
    };

    CgResult result;
    std::vector<double> u(n, 0.0), r(n, 1.0), p(n, 1.0), ap(n);
    const double bnorm = std::sqrt(static_cast<double>(n));
    double rr = static_cast<double>(n);
    int it = 0;
    for (; it < max_iters; ++it) {
        if (std::sqrt(rr) <= tol * bnorm)
            break;
        apply(p, ap);
        double pap = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            pap += p[i] * ap[i];
        if (!(pap > 0.0))
            break;
        const double alpha = rr / pap;
        double rr_next = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
            rr_next += r[i] * r[i];
        }
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t i = 0; i < n; ++i)
            p[i] = r[i] + beta * p[i];
    }
    apply(u, ap);
    double rnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ri = 1.0 - ap[i];
        rnorm += ri * ri;
    }
    result.residual = std::sqrt(rnorm) / bnorm;
    result.converged = result.residual <= tol;
    result.iterations = it;
    result.solution = std::move(u);
    result.wall_ms = elapsed_ms_since(t0);
    return result;
}

} // namespace hqw
