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
 * Gate application and circuit throughput. Items processed counts
 * amplitudes touched, so items per second is directly comparable across
 * qubit counts.
 */

#include <benchmark/benchmark.h>

#include "hqw/quenc.hpp"
#include "hqw/rng.hpp"
#include "hqw/statevector.hpp"

namespace {

using namespace hqw;

void BM_ApplyHadamard(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    StateVector psi = init_zero(n);
    int target = 0;
    for (auto _ : state) {
        apply_gate_in_place(psi, GateSpec::h(target));
        target = (target + 1) % n;
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(psi.dim()));
}
BENCHMARK(BM_ApplyHadamard)->Arg(10)->Arg(14)->Arg(18);

void BM_ApplyRotation(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    StateVector psi = init_zero(n);
    int target = 0;
    for (auto _ : state) {
        apply_gate_in_place(psi, GateSpec::ry(target, 0.3));
        target = (target + 1) % n;
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(psi.dim()));
}
BENCHMARK(BM_ApplyRotation)->Arg(10)->Arg(14)->Arg(18);

void BM_ApplyCnot(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    StateVector psi = init_zero(n);
    for (int q = 0; q < n; ++q) {
        apply_gate_in_place(psi, GateSpec::h(q));
    }
    int control = 0;
    for (auto _ : state) {
        apply_gate_in_place(psi, GateSpec::cnot(control, (control + 1) % n));
        control = (control + 1) % n;
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(psi.dim()));
}
BENCHMARK(BM_ApplyCnot)->Arg(10)->Arg(14)->Arg(18);

/// One full forward pass of the encoding ansatz sized for `nodes` graph
/// nodes, eight layers deep.
void BM_RunAnsatz(benchmark::State &state) {
    const int nodes = static_cast<int>(state.range(0));
    const AnsatzSpec ansatz = build_ansatz(nodes, 8);
    Rng rng(7);
    std::vector<double> params(ansatz.param_count());
    for (auto &p : params) {
        p = rng.uniform(0.0, 6.28);
    }
    for (auto _ : state) {
        const StateVector psi = run_circuit(ansatz, params);
        benchmark::DoNotOptimize(psi.amplitudes.data());
    }
}
BENCHMARK(BM_RunAnsatz)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
