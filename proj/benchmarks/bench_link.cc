// Copyright 2026 The sqlink Authors
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


#include <benchmark/benchmark.h>

#include <numbers>

#include "sqlink/analytic.h"
#include "sqlink/erf.h"
#include "sqlink/link_model.h"
#include "sqlink/montecarlo.h"
#include "sqlink/sweep.h"

namespace {

using namespace sqlink;

void BM_Erf(benchmark::State &state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sqlink::erf(x));
        x = x < 6 ? x + 0.37 : -6;
    }
}
BENCHMARK(BM_Erf);

void BM_LinkFigures(benchmark::State &state) {
    LinkParams p = LinkParams::operating_point();
    for (auto _ : state) {
        benchmark::DoNotOptimize(link_figures(p));
    }
}
BENCHMARK(BM_LinkFigures);

void BM_PostselectedState(benchmark::State &state) {
    LinkParams p = LinkParams::operating_point();
    for (auto _ : state) {
        benchmark::DoNotOptimize(postselected_state(p));
    }
}
BENCHMARK(BM_PostselectedState);

void BM_QuadratureFigures(benchmark::State &state) {
    LinkParams p = LinkParams::operating_point();
    for (auto _ : state) {
        benchmark::DoNotOptimize(quadrature_figures(p));
    }
}
BENCHMARK(BM_QuadratureFigures);

void BM_Fig2Sweep(benchmark::State &state) {
    SweepSpec spec = SweepSpec::fig2(LinkParams::operating_point());
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep(spec));
    }
}
BENCHMARK(BM_Fig2Sweep);

void BM_EstimateLink(benchmark::State &state) {
    LinkParams p = LinkParams::operating_point();
    auto workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_link(p, 1000000, 1, workers));
    }
    state.SetItemsProcessed(state.iterations() * 1000000);
}
BENCHMARK(BM_EstimateLink)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
