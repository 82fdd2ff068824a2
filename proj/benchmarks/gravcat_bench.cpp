// Copyright 2026 The gravcat Authors
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

#include "gravcat/grid.hpp"
#include "gravcat/orchestrator.hpp"
#include "gravcat/protocol.hpp"
#include "gravcat/radial_sn.hpp"
#include "gravcat/random.hpp"
#include "gravcat/two_site.hpp"

namespace {

using namespace gravcat;

void BM_TelegraphSample(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto rec = telegraph_sample(1e-30, 1.0, 0.01 * static_cast<double>(n), 0.01, seed++);
    benchmark::DoNotOptimize(rec.forces.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TelegraphSample)->Arg(500)->Arg(5000);

void BM_CslDiffusiveStep(benchmark::State& state) {
  Rng rng = make_rng(7);
  TwoSiteState s = TwoSiteState::cat();
  for (auto _ : state) {
    s = csl_diffusive_step(s, 1.0, 1e-3, rng);
    if (s.p_plus() < 1e-6 || s.p_minus() < 1e-6) s = TwoSiteState::cat();
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_CslDiffusiveStep);

void BM_GrwHit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto grid = Grid1D::spanning(-3e-12, 3e-12, n);
  const WaveState1D cat = make_cat_state(1e-13, 1e-12, grid);
  Rng rng = make_rng(3);
  for (auto _ : state) {
    const double x = sample_collapse_center(cat, 1e-7, rng);
    auto hit = grw_hit(cat, x, 1e-7);
    benchmark::DoNotOptimize(hit.psi.data());
  }
}
BENCHMARK(BM_GrwHit)->Arg(1024)->Arg(8192);

void BM_SplitStep(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const double mass = 1e-17;
  const auto grid = Grid1D::spanning(-3e-12, 3e-12, n);
  WaveState1D cat = make_cat_state(1e-13, 1e-12, grid, mass);
  const double depth = harmonic_well_depth(mass, 1e-13, 2.5e-13);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = double_well_potential(grid.x(i), depth, 2.5e-13, 1e-12);
  for (auto _ : state) {
    evolve_split_step(cat, v, 1e-9);
    benchmark::DoNotOptimize(cat.psi.data());
  }
}
BENCHMARK(BM_SplitStep)->Arg(2048);

void BM_SnEvolve(benchmark::State& state) {
  const double amu = default_constants().amu;
  const RadialState init = make_radial_gaussian(5e9 * amu, 0.5e-6, 20e-6, 4095);
  for (auto _ : state) {
    auto series = sn_evolve_for(init, default_constants().G, 1000.0, 50);
    benchmark::DoNotOptimize(series.widths.data());
  }
}
BENCHMARK(BM_SnEvolve)->Unit(benchmark::kMillisecond);

void BM_VerdictTable(benchmark::State& state) {
  const std::vector<ExperimentProtocol> protocols = {preset_protocol(ProtocolName::RomeroIsart),
                                                     preset_protocol(ProtocolName::Pino)};
  const std::vector<TheoryId> theories(kAllTheories.begin(), kAllTheories.end());
  for (auto _ : state) {
    auto table = verdict_table(protocols, theories);
    benchmark::DoNotOptimize(table.data());
  }
}
BENCHMARK(BM_VerdictTable);

void BM_ScenarioTelegraph(benchmark::State& state) {
  const ExperimentProtocol p = preset_protocol(ProtocolName::RomeroIsart);
  ScenarioOptions o;
  o.n_traj = 1000;
  o.horizon = 5.0;
  o.dt = 0.01;
  o.threads = 1;
  for (auto _ : state) {
    auto r = run_scenario(TheoryId::CQT_Newton, p, o);
    benchmark::DoNotOptimize(r.records.data());
  }
}
BENCHMARK(BM_ScenarioTelegraph)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
