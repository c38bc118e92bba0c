// Copyright 2026 The cploss Authors
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

#include <cmath>

#include "cploss/analysis.hpp"
#include "cploss/experiments.hpp"
#include "cploss/numerics.hpp"
#include "cploss/robustness.hpp"

namespace cploss {
namespace {

void BM_IntegrateLogSingularity(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate([](double x) { return std::log(x); }, 0.0, 1.0));
  }
}
BENCHMARK(BM_IntegrateLogSingularity);

void BM_LambertW(benchmark::State& state) {
  double z = -0.36;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w0(z));
    z = z > 1e5 ? -0.36 : z * 1.7 + 0.4;
  }
}
BENCHMARK(BM_LambertW);

// Closed-form partials versus the quadrature path for the same density.
void BM_PartialClosed(benchmark::State& state) {
  const ProperLoss loss = catalog_loss("log");
  double p = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss.ell_neg(p));
    p = p > 0.98 ? 0.01 : p + 0.013;
  }
}
BENCHMARK(BM_PartialClosed);

void BM_PartialQuadrature(benchmark::State& state) {
  const ProperLoss loss = from_weight(expression_weight("1/(c*(1-c))"));
  double p = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss.ell_neg(p));
    p = p > 0.98 ? 0.01 : p + 0.013;
  }
}
BENCHMARK(BM_PartialQuadrature);

void BM_CanonicalLinkInverse(benchmark::State& state) {
  const Link link = canonical_link(catalog_weight("boosting"));
  double v = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(link.q(v));
    v = v > 5.0 ? -5.0 : v + 0.37;
  }
}
BENCHMARK(BM_CanonicalLinkInverse);

void BM_ConvexityCharacterization(benchmark::State& state) {
  const auto grid = interior_grid(static_cast<int>(state.range(0)));
  const WeightFunction wf = catalog_weight("boosting");
  const Link link = catalog_link("logit");
  for (auto _ : state) {
    benchmark::DoNotOptimize(convexity_characterization(wf, link, grid));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvexityCharacterization)->Range(99, 9999)->Complexity();

void BM_ConvexityOracle(benchmark::State& state) {
  const auto grid = interior_grid(static_cast<int>(state.range(0)));
  const Link link = catalog_link("logit");
  const CompositeLoss cl = make_composite(catalog_loss("boosting"), link);
  const auto scores = score_grid_for(link, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convexity_oracle(cl, scores));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvexityOracle)->Range(99, 9999)->Complexity();

void BM_NonrobustRegion(benchmark::State& state) {
  const auto grid = interior_grid(999);
  const WeightFunction wf = catalog_weight("log");
  for (auto _ : state) {
    benchmark::DoNotOptimize(proper_nonrobust_region(wf, NoiseLevel(0.1), grid));
  }
}
BENCHMARK(BM_NonrobustRegion);

void BM_SurrogateExperiment(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(incommensurability_report());
  }
}
BENCHMARK(BM_SurrogateExperiment)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cploss

BENCHMARK_MAIN();
