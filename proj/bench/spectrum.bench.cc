// Copyright 2026 The magicbound Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <omp.h>

#include "benchmark/benchmark.h"
#include "magicbound/extent.h"
#include "magicbound/spectrum_kernel.h"
#include "magicbound/states.h"

using namespace mb;

namespace {

ExactState bench_state(int64_t n) {
    return resource_state("QFT:1:" + std::to_string(n));
}

void spectrum_serial(benchmark::State &state) {
    ExactState s = bench_state(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel::spectrum_serial(s));
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << (2 * state.range(0))));
}

void spectrum_parallel(benchmark::State &state) {
    ExactState s = bench_state(state.range(0));
    state.counters["threads"] = omp_get_max_threads();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel::spectrum_parallel(s));
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << (2 * state.range(0))));
}

// Slow per-Pauli reference, small sizes only.
void spectrum_reference(benchmark::State &state) {
    ExactState s = bench_state(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pauli_spectrum_reference(s));
    }
}

void extent_solve(benchmark::State &state) {
    ExactState s = resource_state(state.range(0) == 2 ? "CS" : "CCZ");
    for (auto _ : state) {
        benchmark::DoNotOptimize(extent(s, ExtentOptions{}));
    }
}

}  // namespace

BENCHMARK(spectrum_serial)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(spectrum_parallel)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(spectrum_reference)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(extent_solve)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
