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

#include "aris/errors.hpp"
#include "aris/li_optimizer.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aris;
using test::cd;

namespace {

LiState random_li(const LiProblem& p, SeededRng& rng) {
  LiState li;
  li.theta = test::phasors(p.n_e(), rng);
  li.v = test::gaussian(p.n_e(), 1, rng).col(0);
  li.v *= std::sqrt(p.p_v * rng.uniform() / li.v.squaredNorm());
  return li;
}

// v^H B v with B = Theta^H g g^H Theta
double an_objective(const LiProblem& p, const ComplexVector& theta, const ComplexVector& v) {
  cd acc = 0.0;
  for (int n = 0; n < p.n_e(); ++n) acc += std::conj(p.g_ee(n)) * theta(n) * v(n);
  return std::norm(acc);
}

double q4_at(LiState li, const LiProblem& p, cd xi) {
  li.xi = xi;
  return q4_value(li, p);
}

}  // namespace

TEST_CASE("ISR matches the scalar-loop evaluation") {
  SeededRng rng(300);
  for (int i = 0; i < 40; ++i) {
    const LiProblem p = test::normalized_li_problem(rng, 3, 1 + i % 4, 1 + i % 9);
    const LiState li = random_li(p, rng);
    const double ref = test::ref_isr(p, li.theta, li.v);
    CHECK(std::abs(isr_mu(li, p) - ref) <= 1e-12 * ref);
    LiState scaled = li;
    scaled.v *= cd(2.0, -1.0);
    CHECK(isr_mu(scaled, p) == doctest::Approx(5.0 * isr_mu(li, p)).epsilon(1e-12));
  }
  const LiProblem p = test::normalized_li_problem(rng, 3, 2, 4);
  LiState li = random_li(p, rng);
  li.v.setZero();
  CHECK(isr_mu(li, p) == 0.0);
  LiProblem silent = p;
  silent.w.setZero();
  CHECK_THROWS_AS(isr_mu(random_li(p, rng), silent), DomainError);
  CHECK_THROWS_AS(update_xi(random_li(p, rng), silent), DomainError);
}

TEST_CASE("xi update is tight and stationary") {
  SeededRng rng(301);
  for (int i = 0; i < 30; ++i) {
    const LiProblem p = test::normalized_li_problem(rng, 4, 4, 2 + i % 6);
    LiState li = random_li(p, rng);
    li.xi = update_xi(li, p);
    const double q4 = q4_value(li, p);
    CHECK(std::abs(q4 - isr_mu(li, p)) <= 1e-12 * std::abs(q4));
    const double h = 1e-6 * std::max(1.0, std::abs(li.xi));
    const double d_re = (q4_at(li, p, li.xi + h) - q4_at(li, p, li.xi - h)) / (2 * h);
    const double d_im = (q4_at(li, p, li.xi + cd(0, h)) - q4_at(li, p, li.xi - cd(0, h))) / (2 * h);
    CHECK(std::abs(d_re) < 1e-6 * std::max(1.0, q4 / std::abs(li.xi)));
    CHECK(std::abs(d_im) < 1e-6 * std::max(1.0, q4 / std::abs(li.xi)));
  }
  const LiProblem p = test::normalized_li_problem(rng, 2, 2, 3);
  LiState li = random_li(p, rng);
  li.v.setZero();
  CHECK(update_xi(li, p) == cd(0.0));
}

TEST_CASE("AN update spends the budget along the best direction") {
  SeededRng rng(302);
  for (int i = 0; i < 50; ++i) {
    const int n_e = 1 + i % 8;
    const LiProblem p = test::normalized_li_problem(rng, 3, 2, n_e);
    LiState li = random_li(p, rng);
    li.xi = update_xi(li, p);
    const ComplexVector v = update_an(li, p);
    CHECK(std::abs(v.squaredNorm() - p.p_v) <= 1e-12 * p.p_v);
    const double got = an_objective(p, li.theta, v);
    for (int j = 0; j < 1000; ++j) {
      ComplexVector c = test::gaussian(n_e, 1, rng).col(0);
      c *= std::sqrt(p.p_v) / c.norm();
      CHECK(got >= an_objective(p, li.theta, c) * (1 - 1e-12));
    }
    const ComplexVector ve = update_an_eigen(li, p);
    CHECK(std::abs(an_objective(p, li.theta, ve) - got) <= 1e-10 * got);
    CHECK(std::abs(std::abs(v.dot(ve)) - p.p_v) <= 1e-10 * p.p_v);
    if (n_e == 1) CHECK(std::abs(v(0)) == doctest::Approx(std::sqrt(p.p_v)).epsilon(1e-14));
  }
  LiProblem p = test::normalized_li_problem(rng, 2, 2, 3);
  p.p_v = 0.0;
  CHECK_THROWS_AS(update_an(random_li(test::normalized_li_problem(rng, 2, 2, 3), rng), p), InfeasibleError);
}

TEST_CASE("homogenised form") {
  SeededRng rng(303);
  const LiProblem p = test::normalized_li_problem(rng, 3, 3, 5);
  LiState li = random_li(p, rng);
  li.xi = update_xi(li, p);
  const HomogenizedProblem hp = li_quadratic(li, p);
  const ComplexVector theta = test::phasors(5, rng);
  ComplexVector z(6);
  z << theta, cd(1.0);
  CHECK(hp.lifted_objective(z) == doctest::Approx(hp.objective(theta)).epsilon(1e-12));
  const cd t = std::polar(1.0, 0.7);
  CHECK(hp.lifted_objective(z * t) == doctest::Approx(hp.objective(theta)).epsilon(1e-12));
  const ComplexMatrix D = hp.d_matrix();
  CHECK(D.rows() == 6);
  CHECK((D - D.adjoint()).norm() <= 1e-12 * D.norm());
  // with the emitted AN held fixed the quadratic and Q4 differ by a constant
  LiState other = li;
  other.theta = theta;
  other.v = theta.conjugate().cwiseProduct(li.theta).cwiseProduct(li.v);
  CHECK(q4_value(other, p) - hp.objective(theta) ==
        doctest::Approx(q4_value(li, p) - hp.objective(li.theta)).epsilon(1e-9));
}

TEST_CASE("coordinate ascent: closed form, ascent, unit modulus") {
  SeededRng rng(304);
  LiConfig cfg;
  HomogenizedProblem one;
  one.upsilon = ComplexVector::Constant(1, cd(0.3, -0.8));
  one.W = ComplexMatrix::Constant(1, 1, cd(2.0, 0.0));
  const ComplexVector t1 = coordinate_ascent(one, ComplexVector::Ones(1), cfg);
  CHECK(std::arg(t1(0)) == doctest::Approx(std::arg(one.upsilon(0))).epsilon(1e-12));
  for (int i = 0; i < 30; ++i) {
    const int n = 2 + i % 12;
    HomogenizedProblem hp;
    hp.upsilon = test::gaussian(n, 1, rng).col(0);
    hp.W = test::gaussian(n, 4, rng);
    const ComplexVector start = test::phasors(n, rng);
    const ComplexVector out = coordinate_ascent(hp, start, cfg);
    for (int k = 0; k < n; ++k) CHECK(std::abs(std::abs(out(k)) - 1.0) <= 1e-9);
    CHECK(hp.objective(out) >= hp.objective(start) - 1e-12 * std::abs(hp.objective(start)));
    // no single coordinate can be improved any further
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < 16; ++a) {
        ComplexVector probe = out;
        probe(k) = std::polar(1.0, 2 * M_PI * a / 16);
        CHECK(hp.objective(probe) <= hp.objective(out) + 1e-9 * std::abs(hp.objective(out)));
      }
  }
}

TEST_CASE("precoder solver reaches the 64-phase grid optimum") {
  SeededRng rng(305);
  LiConfig cfg;
  for (int n_e = 1; n_e <= 4; ++n_e)
    for (int i = 0; i < (n_e == 4 ? 3 : 15); ++i) {
      const LiProblem p = test::normalized_li_problem(rng, 3, 2, n_e);
      LiState li = random_li(p, rng);
      li.xi = update_xi(li, p);
      const HomogenizedProblem hp = li_quadratic(li, p);
      const double grid = test::grid_optimum(hp.upsilon, hp.W * hp.W.adjoint());
      CHECK(hp.objective(update_precoder_li(li, p, cfg)) >= grid - 1e-6);
    }
}

TEST_CASE("LI loop: monotone, feasible, deterministic, beats random search") {
  SeededRng rng(306);
  FpConfig fp;
  LiConfig cfg;
  for (int i = 0; i < 8; ++i) {
    const LiProblem p = test::normalized_li_problem(rng, 3, 2, 2 + i);
    std::vector<LiTraceRow> trace;
    const LiState li = optimize_li(p, fp, cfg, initial_li_state(p), &trace);
    for (std::size_t t = 1; t < trace.size(); ++t)
      CHECK(trace[t].q4 >= trace[t - 1].q4 - 1e-9 * std::abs(trace[t - 1].q4));
    for (const auto& r : trace) CHECK(r.an_margin >= -1e-9 * p.p_e);
    for (int n = 0; n < p.n_e(); ++n) CHECK(std::abs(std::abs(li.theta(n)) - 1.0) <= 1e-9);
    const double got = test::ref_isr(p, li.theta, li.v);
    double best = 0.0;
    for (int j = 0; j < 10000; ++j) {
      const LiState c = random_li(p, rng);
      best = std::max(best, test::ref_isr(p, c.theta, c.v));
    }
    CHECK(got >= best - 1e-6 * best);
    const LiState again = optimize_li(p, fp, cfg, initial_li_state(p));
    CHECK(again.theta == li.theta);
    CHECK(again.v == li.v);
  }
  LiProblem empty = test::normalized_li_problem(rng, 2, 2, 1);
  empty.g_ee.resize(0);
  empty.H_e.resize(0, 2);
  LiState s0;
  s0.theta.resize(0);
  s0.v.resize(0);
  CHECK_THROWS_AS(optimize_li(empty, fp, cfg, s0), DomainError);
}

TEST_CASE("interference problem from a physical instance") {
  const test::Instance in = test::table_instance(12);
  const PartitionPlan plan = adaptive_plan(in.s, in.d);
  CeProblem cp = make_ce_problem(in.ch, in.s, plan);
  const CeState ce = initial_ce_state(cp);
  const LiProblem p = make_li_problem(in.ch, plan, 0, ce);
  CHECK(p.n_e() == plan.n_e[0]);
  CHECK(p.p_e == plan.p_e[0]);
  CHECK(p.p_v == doctest::Approx(p.p_e - li_signal_power(p.H_e, ce.w)));
  // hbar_e carries the CE path: compare with an element loop
  for (int m = 0; m < in.s.M; ++m) {
    cd acc = in.ch.h_mu(m, 0);
    for (int n = 0; n < plan.n0; ++n) acc += std::conj(in.ch.H(n, m)) * std::conj(ce.theta(n)) * in.ch.g_mu(n, 0);
    CHECK(std::abs(acc - p.hbar_e(m)) <= 1e-12 * std::abs(acc));
  }
  CHECK_THROWS_AS(make_li_problem(in.ch, plan, in.s.E, ce), DomainError);
}
