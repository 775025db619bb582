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


#include <algorithm>
#include <cmath>
#include <numeric>

#include "aris/errors.hpp"
#include "aris/scenario.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aris;

TEST_CASE("receivers on the sphere around their centre") {
  SeededRng rng(1);
  const Position c{350.0, 110.0, 50.0};
  for (const auto& p : place_rus(c, 5.0, 50, rng)) CHECK(std::abs((p - c).norm() - 5.0) < 1e-9);
  CHECK(place_rus(c, 5.0, 0, rng).empty());
  CHECK_THROWS_AS(place_rus(c, 0.0, 3, rng), DomainError);
}

TEST_CASE("uniform sphere sampling is centred") {
  SeededRng rng(2);
  const Position c{350.0, 110.0, 50.0};
  const auto pts = place_rus(c, 5.0, 100000, rng);
  const Position mean = std::accumulate(pts.begin(), pts.end(), Position(Position::Zero())) / pts.size();
  for (int i = 0; i < 3; ++i) CHECK(std::abs(mean(i) - c(i)) < 0.1);
}

TEST_CASE("malicious receivers on the hemisphere") {
  SeededRng rng(3);
  const Position su{50.0, 50.0, 50.0};
  const auto six = place_mus(su, 400.0, 6, rng);
  REQUIRE(six.size() == 6);
  for (const auto& p : six) CHECK(std::abs((p - su).norm() - 400.0) < 1e-9);
  CHECK(place_mus(su, 400.0, 0, rng).empty());
  for (Hemisphere h : {Hemisphere::AboveGround, Hemisphere::AboveSource, Hemisphere::FullSphere}) {
    const auto pts = place_mus(su, 400.0, 100000, rng, h);
    const bool all_in = std::all_of(pts.begin(), pts.end(), [&](const Position& p) { return in_hemisphere(p, su, h); });
    CHECK(all_in);
  }
  // the ground plane clips the sphere, not the source altitude
  const auto pts = place_mus(su, 400.0, 20000, rng, Hemisphere::AboveGround);
  CHECK(std::any_of(pts.begin(), pts.end(), [&](const Position& p) { return p.z() < su.z(); }));
  CHECK(std::all_of(pts.begin(), pts.end(), [](const Position& p) { return p.z() >= 0.0; }));
}

TEST_CASE("distances") {
  Scenario s;
  s.su_pos = {0, 0, 0};
  s.aris_pos = {3, 4, 0};
  s.K = 1;
  s.E = 1;
  s.ru_pos = {{10, 0, 0}};
  s.mu_pos = {{0, 0, 8}};
  DistanceSet d = distances(s);
  CHECK(d.d_H == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(d.d_h[0] == doctest::Approx(8.0));
  CHECK(d.v_ratio[0] == d.d_g[0] / d.d_h[0]);

  s.mu_pos = {s.aris_pos};
  CHECK_THROWS_AS(distances(s), DomainError);

  Scenario t;
  SeededRng rng(4);
  t = realize(t, rng);
  CHECK(distances(t).d_H == doctest::Approx(std::sqrt(220.0 * 220 + 70 * 70 + 30 * 30)).epsilon(1e-14));
  CHECK(distances(t).d_H == doctest::Approx(232.6).epsilon(1e-3));
}

TEST_CASE("distances are permutation equivariant and deterministic") {
  SeededRng rng(5);
  Scenario s = realize(Scenario{}, rng);
  const DistanceSet a = distances(s);
  std::reverse(s.mu_pos.begin(), s.mu_pos.end());
  const DistanceSet b = distances(s);
  for (int e = 0; e < s.E; ++e) {
    CHECK(a.d_h[e] == b.d_h[s.E - 1 - e]);
    CHECK(a.v_ratio[e] == b.v_ratio[s.E - 1 - e]);
  }
  const DistanceSet c = distances(s);
  CHECK(c.d_g == b.d_g);
}

TEST_CASE("placement is reproducible") {
  SeededRng a(9), b(9);
  const Scenario x = realize(Scenario{}, a);
  const Scenario y = realize(Scenario{}, b);
  CHECK(x.mu_pos == y.mu_pos);
  CHECK(x.ru_pos == y.ru_pos);
}

TEST_CASE("table defaults and validation") {
  Scenario s;
  CHECK(s.M == 4);
  CHECK(s.K == 4);
  CHECK(s.E == 6);
  CHECK(s.n_t == 512);
  CHECK(s.p_s_max == doctest::Approx(10e-3));
  CHECK(s.p_r_max == doctest::Approx(20e-3));
  CHECK(s.sigma_db == 10.0);
  CHECK(s.loss.l0_db == -37.3);
  CHECK(s.loss.exponent == 2.2);
  CHECK(s.omega == 0.15);
  CHECK_NOTHROW(s.validate());
  Scenario bad = s;
  bad.K = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = s;
  bad.p_r_max = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = s;
  bad.n_t = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = s;
  bad.E = -1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("channel set shapes and scaling") {
  const test::Instance in = test::table_instance(7);
  CHECK(in.ch.H.rows() == 512);
  CHECK(in.ch.H.cols() == 4);
  CHECK(in.ch.h_ru.cols() == 4);
  CHECK(in.ch.g_mu.cols() == 6);
  // SU -> ARIS entries carry the SU -> ARIS path loss on average
  const double l_H = path_loss(in.d.d_H, in.s.loss);
  CHECK(std::abs(in.ch.H.cwiseAbs2().mean() / l_H - 1.0) < 0.05);
  const CeChannels v = ce_view(in.ch, 100);
  CHECK(v.H.rows() == 100);
  CHECK(v.H == in.ch.H.topRows(100));
  const LiChannels lv = li_view(in.ch, 2, 100, 130, 20);
  CHECK(lv.H_e == in.ch.H.middleRows(130, 20));
  CHECK(lv.g_ee == in.ch.g_mu.col(2).segment(130, 20));
}
