// Copyright 2026 The qhit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "qhit/classical.hpp"
#include "qhit/hitting.hpp"
#include "qhit/oracle.hpp"
#include "qhit/random.hpp"
#include "qhit/reference_models.hpp"

namespace {

using namespace qhit;

struct Instance {
  SuperOperator map;
  ArrivalSubspace subspace;
  DensityMatrix start;
};

Instance random_instance(Eigen::Index n) {
  rnd::Engine eng(static_cast<std::uint64_t>(n));
  SuperOperator map = rnd::random_channel(n, 3, eng);
  std::vector<ComplexVector> vs;
  for (Eigen::Index k = 0; k < n / 2; ++k) vs.push_back(rnd::random_unit_vector(n, eng));
  ArrivalSubspace v = subspace_from_vectors(vs);
  DensityMatrix start = rnd::random_density_in(v.complement(), eng);
  return {std::move(map), std::move(v), std::move(start)};
}

void BM_SolveHitting(benchmark::State& state) {
  const auto inst = random_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_hitting(inst.map, inst.subspace));
}
BENCHMARK(BM_SolveHitting)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_DirectQuery(benchmark::State& state) {
  const auto inst = random_instance(state.range(0));
  const auto hs = solve_hitting(inst.map, inst.subspace);
  for (auto _ : state) benchmark::DoNotOptimize(mean_hitting_time_direct(hs, inst.start));
}
BENCHMARK(BM_DirectQuery)->DenseRange(2, 8, 2);

void BM_TauSeries(benchmark::State& state) {
  const auto inst = random_instance(state.range(0));
  const auto sp = super_projectors(inst.subspace);
  for (auto _ : state) benchmark::DoNotOptimize(tau_series(inst.map, sp, inst.start));
}
BENCHMARK(BM_TauSeries)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_FourLevel(benchmark::State& state) {
  const SuperOperator map = models::four_level_channel(0.6);
  const ArrivalSubspace v = subspace_from_basis(4, {2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(solve_hitting(map, v));
}
BENCHMARK(BM_FourLevel)->Unit(benchmark::kMicrosecond);

void BM_ClassicalChain(benchmark::State& state) {
  rnd::Engine eng(11);
  const RealMatrix p = rnd::random_stochastic(state.range(0), eng);
  for (auto _ : state) {
    const MarkovChain mc = build_chain(p);
    benchmark::DoNotOptimize(classical_mhtf(mc, 0, 1));
  }
}
BENCHMARK(BM_ClassicalChain)->RangeMultiplier(4)->Range(8, 128)->Unit(benchmark::kMicrosecond);

void BM_MonteCarlo(benchmark::State& state) {
  rnd::Engine eng(13);
  const RealMatrix p = rnd::random_stochastic(8, eng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical_monte_carlo(p, Eigen::Index{0}, {7}, state.range(0), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(10000)->Arg(100000)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
