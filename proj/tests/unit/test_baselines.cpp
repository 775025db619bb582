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


#include <cmath>
#include <limits>

#include "aris/baselines.hpp"
#include "aris/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aris;

namespace {

SchemeOptions quick() {
  SchemeOptions o;
  o.fp.max_outer_iters = 25;
  return o;
}

test::Instance small_instance(std::uint64_t seed) {
  Scenario base;
  base.n_t = 128;
  return test::table_instance(seed, base);
}

}  // namespace

TEST_CASE("scheme tags") {
  for (SchemeId id : all_schemes()) CHECK(parse_scheme(to_string(id)) == id);
  CHECK(all_schemes().size() == 4);
  CHECK(to_string(SchemeId::NoPartition) == "no_partition");
  CHECK_THROWS_AS(parse_scheme("random"), DomainError);
}

TEST_CASE("WMMSE single receiver is maximum-ratio transmission") {
  SeededRng rng(500);
  CeChannels ch;
  ch.h = test::gaussian(4, 1, rng);
  ch.H = ComplexMatrix(0, 4);
  ch.G = ComplexMatrix(0, 1);
  const ComplexMatrix w = wmmse_beamforming(ch, 0.1, 2.0, FpConfig{});
  CHECK(w.squaredNorm() == doctest::Approx(2.0).epsilon(1e-9));
  const double align = std::abs(ch.h.col(0).dot(w.col(0))) / (ch.h.norm() * w.norm());
  CHECK(align == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("WMMSE is monotone and beats random beamformers") {
  SeededRng rng(501);
  for (int i = 0; i < 3; ++i) {
    CeProblem p;
    p.ch.h = test::gaussian(2, 2, rng);
    p.ch.H = ComplexMatrix(0, 2);
    p.ch.G = ComplexMatrix(0, 2);
    p.sigma2 = 0.1;
    p.p_s_max = 1.0;
    std::vector<WmmseTraceRow> trace;
    const ComplexMatrix w = wmmse_beamforming(p.ch, p.sigma2, p.p_s_max, FpConfig{}, &trace);
    for (std::size_t t = 1; t < trace.size(); ++t)
      CHECK(trace[t].sum_rate >= trace[t - 1].sum_rate - 1e-9 * std::abs(trace[t - 1].sum_rate));
    CHECK(test::ref_su_power(w) <= p.p_s_max * (1 + 1e-9));
    const ComplexVector none(0);
    const double got = test::ref_rate(p, none, w);
    double best = 0.0;
    for (int j = 0; j < 1000000; ++j) {
      ComplexMatrix c = test::gaussian(2, 2, rng);
      c *= std::sqrt(p.p_s_max / test::ref_su_power(c));
      best = std::max(best, test::ref_rate(p, none, c));
    }
    CHECK(got >= best - 1e-3);
  }
}

TEST_CASE("no_aris ignores the surface") {
  const test::Instance in = small_instance(502);
  const SchemeOutcome out = run_scheme(SchemeId::NoAris, in.s, in.d, in.ch, quick());
  for (const auto& li : out.li) CHECK(!li.has_value());
  const SystemMetrics m = evaluate_metrics(out, in.s, in.ch);
  for (double v : m.isr) CHECK(v == 0.0);
  CHECK(m.mean_isr == 0.0);
  CHECK(!rss_truth(out).aris_present);

  Scenario other = in.s;
  other.p_r_max *= 3.0;
  other.aris_pos += Position(40.0, -20.0, 5.0);
  other.n_t = 64;
  other.sigma_v2 *= 10.0;
  SeededRng chan(derive_seed(502, {1}));
  const DistanceSet d2 = distances(other);
  const ChannelSet ch2 = generate_channels(other, d2, chan);
  const SchemeOutcome out2 = run_scheme(SchemeId::NoAris, other, d2, ch2, quick());
  CHECK(evaluate_metrics(out2, other, ch2).sum_rate == m.sum_rate);
}

TEST_CASE("fixed partition shares") {
  const test::Instance in = small_instance(503);
  Scenario s = in.s;
  s.n_t = 512;
  const PartitionPlan plan = fixed_plan(s);
  for (int n : plan.n_e) CHECK(n == 42);
  CHECK(plan.rho0 == 0.5);
  CHECK(plan.eta0 == 0.5);
}

TEST_CASE("adaptive scheme is the composition of its parts") {
  const test::Instance in = small_instance(504);
  SchemeOptions opt = quick();
  const SchemeOutcome out = run_scheme(SchemeId::Adaptive, in.s, in.d, in.ch, opt);
  const PartitionPlan plan = adaptive_plan(in.s, in.d);
  CHECK(out.plan.n0 == plan.n0);
  CHECK(out.plan.n_e == plan.n_e);
  const CeProblem p = make_ce_problem(in.ch, in.s, plan);
  const CeState ce = optimize_ce(p, opt.fp, initial_ce_state(p));
  CHECK(out.ce.w == ce.w);
  CHECK(out.ce.theta == ce.theta);
  const SystemMetrics m = evaluate_metrics(out, in.s, in.ch);
  CHECK(m.sum_rate == sum_rate(ce, p));
  for (int e = 0; e < in.s.E; ++e) {
    if (plan.n_e[e] < 1) continue;
    LiProblem lp = make_li_problem(in.ch, plan, e, ce);
    if (!(lp.p_v > opt.min_an_power)) lp.p_v = opt.min_an_power;
    LiConfig cfg = opt.li;
    cfg.seed = derive_seed(opt.li.seed, {static_cast<std::uint64_t>(e)});
    const LiState li = optimize_li(lp, opt.fp, cfg, initial_li_state(lp));
    REQUIRE(out.li[e].has_value());
    CHECK(out.li[e]->theta == li.theta);
    CHECK(m.isr[e] == doctest::Approx(test::ref_isr(lp, li.theta, li.v)).epsilon(1e-12));
  }
}

TEST_CASE("no_partition uses the whole surface without AN") {
  const test::Instance in = small_instance(505);
  const SchemeOutcome out = run_scheme(SchemeId::NoPartition, in.s, in.d, in.ch, quick());
  CHECK(out.plan.n0 == in.s.n_t);
  CHECK(out.plan.eta0 == 1.0);
  for (const auto& li : out.li) CHECK(!li.has_value());
  const SystemMetrics a = evaluate_metrics(out, in.s, in.ch, false);
  const SystemMetrics b = evaluate_metrics(out, in.s, in.ch, true);
  CHECK(b.sum_rate == doctest::Approx(a.sum_rate).epsilon(1e-12));
  CHECK(b.mean_isr == 0.0);
}

TEST_CASE("misaligned paths only add interference at the receivers") {
  const test::Instance in = small_instance(506);
  const SchemeOutcome out = run_scheme(SchemeId::Fixed, in.s, in.d, in.ch, quick());
  const SystemMetrics a = evaluate_metrics(out, in.s, in.ch, false);
  const SystemMetrics b = evaluate_metrics(out, in.s, in.ch, true);
  CHECK(std::isfinite(b.sum_rate));
  CHECK(b.isr.size() == a.isr.size());
  const RssTruth t = rss_truth(out);
  CHECK(t.aris_present);
  CHECK(t.n_e == out.plan.n_e);
  CHECK(t.ce_gain == doctest::Approx(out.ce.theta.squaredNorm()));
  for (std::size_t e = 0; e < t.an_power.size(); ++e)
    if (out.li[e]) CHECK(t.an_power[e] == doctest::Approx(out.li[e]->v.squaredNorm()));
}
