// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ARIS Privacy Toolkit Authors
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


// Serial reference vs OpenMP versions of the two parallel kernels: the MLE
// grid scan and the experiment cell loop.

#include <benchmark/benchmark.h>

#include "aris/experiment.hpp"
#include "aris/localization.hpp"
#include "aris/partition.hpp"
#include "aris/rng.hpp"
#include "aris/scenario.hpp"

namespace {

struct GridFixture {
  aris::AdversaryModel model;
  aris::SearchGrid grid;
  Eigen::VectorXd obs;
};

GridFixture make_fixture() {
  aris::SeededRng rng(7);
  aris::Scenario base;
  base.E = 8;
  const aris::Scenario s = aris::realize(base, rng);
  const aris::DistanceSet d = aris::distances(s);
  aris::RssTruth t;
  t.p_s = s.p_s_max;
  t.ce_gain = 200.0;
  t.n_e.assign(s.E, 8);
  t.an_power.assign(s.E, 1e-4);
  std::vector<aris::RssComponents> comps;
  Eigen::VectorXd means(s.E);
  for (int e = 0; e < s.E; ++e) {
    comps.push_back(aris::rss_components(e, s, d, t));
    means(e) = comps.back().c;
  }
  GridFixture f{aris::make_adversary(s, comps, true), {}, aris::sample_observations(means, s.sigma_db, rng)};
  f.grid = aris::make_grid(f.model, aris::MleSearch{});
  return f;
}

void BM_GridSerial(benchmark::State& state) {
  const GridFixture f = make_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(aris::grid_search_serial(f.obs, f.model, f.grid));
}

void BM_GridParallel(benchmark::State& state) {
  const GridFixture f = make_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(aris::grid_search_parallel(f.obs, f.model, f.grid));
}

aris::ExperimentSpec small_spec(bool parallel) {
  aris::ExperimentSpec spec;
  spec.sweep_variable = aris::SweepVariable::DSe;
  spec.sweep_values = {300.0, 400.0};
  spec.trials = 2;
  spec.schemes = {aris::SchemeId::Fixed, aris::SchemeId::NoAris};
  spec.base.n_t = 128;
  spec.options.fp.max_outer_iters = 10;
  spec.parallel = parallel;
  return spec;
}

void BM_ExperimentSerial(benchmark::State& state) {
  const auto spec = small_spec(false);
  for (auto _ : state) benchmark::DoNotOptimize(aris::run_experiment(spec));
}

void BM_ExperimentParallel(benchmark::State& state) {
  const auto spec = small_spec(true);
  for (auto _ : state) benchmark::DoNotOptimize(aris::run_experiment(spec));
}

}  // namespace

BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_ExperimentParallel)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
