/*
 * Copyright 2026 The cstn-dc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference vs OpenMP kernels on the two data-parallel passes.

#include <benchmark/benchmark.h>

#include "cstn/dc.hpp"
#include "cstn/generators.hpp"

using namespace cstn;

namespace {

Cstn network(int which)
{
    if (which == 0) return gen_gamma_n({2});
    RandomCstnParams p;
    p.nodes = 12;
    p.props = 6;
    p.arc_density = Rational(1, 4);
    p.weight_range = 20;
    p.seed = 4;
    return gen_random_cstn(p);
}

void BM_construct_parallel(benchmark::State& st)
{
    Cstn g = network(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(construct_h_epsilon(g, EpsilonRational(1, 2)));
}

void BM_construct_serial(benchmark::State& st)
{
    Cstn g = network(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(construct_h_epsilon_serial(g, EpsilonRational(1, 2)));
}

void BM_verify_parallel(benchmark::State& st)
{
    GammaNParams p{static_cast<int>(st.range(0))};
    Cstn g = gen_gamma_n(p);
    ExecutionStrategy s = gen_gamma_n_strategy(p);
    for (auto _ : st) benchmark::DoNotOptimize(verify_strategy(g, s, EpsilonRational(1, 1024)));
}

void BM_verify_serial(benchmark::State& st)
{
    GammaNParams p{static_cast<int>(st.range(0))};
    Cstn g = gen_gamma_n(p);
    ExecutionStrategy s = gen_gamma_n_strategy(p);
    for (auto _ : st) benchmark::DoNotOptimize(verify_strategy_serial(g, s, EpsilonRational(1, 1024)));
}

} // namespace

BENCHMARK(BM_construct_parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_construct_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_parallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
