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
 * End-to-end Poisson solves. The argument is the number of grid levels per
 * axis, so the 3d problem size is 8^d points. The conjugate gradient
 * entries stop at d=7 because its memory and runtime are grid-bound.
 */

#include <benchmark/benchmark.h>

#include "hqw/poisson.hpp"

namespace {

using namespace hqw;

void BM_PoissonTt3d(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const PoissonTtResult result = solve_poisson_tt_3d(d);
        benchmark::DoNotOptimize(result.residual);
    }
}
BENCHMARK(BM_PoissonTt3d)->Arg(5)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PoissonCg3d(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const CgResult result = cg_solve_3d(d);
        benchmark::DoNotOptimize(result.residual);
    }
}
BENCHMARK(BM_PoissonCg3d)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_PoissonTt1d(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const PoissonTtResult result = solve_poisson_tt_1d(d);
        benchmark::DoNotOptimize(result.residual);
    }
}
BENCHMARK(BM_PoissonTt1d)->Arg(6)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
