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
 * Core tensor-train kernels: rounding after addition, inner products, and
 * operator application. All trains have 30 cores (a 2^30 point space), so
 * the dense equivalents would be a billion entries.
 */

#include <benchmark/benchmark.h>

#include "hqw/poisson.hpp"
#include "hqw/tensortrain.hpp"

namespace {

using namespace hqw;

constexpr int kCores = 30;

void BM_TtRound(benchmark::State &state) {
    const int rank = static_cast<int>(state.range(0));
    const TTVector a = tt_random(kCores, rank, 11);
    const TTVector b = tt_random(kCores, rank, 12);
    const TTVector sum = tt_add(a, b);
    for (auto _ : state) {
        TTVector rounded = tt_round(sum, 1e-10, rank);
        benchmark::DoNotOptimize(rounded.cores.data());
    }
}
BENCHMARK(BM_TtRound)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_TtDot(benchmark::State &state) {
    const int rank = static_cast<int>(state.range(0));
    const TTVector a = tt_random(kCores, rank, 21);
    const TTVector b = tt_random(kCores, rank, 22);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tt_dot(a, b));
    }
}
BENCHMARK(BM_TtDot)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

/// Applies the three-dimensional stencil operator to a rank-8 train on a
/// 2^10 per axis grid and rounds the result back down.
void BM_MpoApplyRound(benchmark::State &state) {
    const MPO op = laplacian_mpo_3d(10);
    const TTVector x = tt_random(kCores, 8, 31);
    for (auto _ : state) {
        TTVector y = tt_round(mpo_apply(op, x), 1e-10, 16);
        benchmark::DoNotOptimize(y.cores.data());
    }
}
BENCHMARK(BM_MpoApplyRound)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
