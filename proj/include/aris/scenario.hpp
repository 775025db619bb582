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

#pragma once

#include <Eigen/Core>
#include <vector>

#include "aris/rng.hpp"
#include "aris/units.hpp"

namespace aris {

using Position = Eigen::Vector3d;

// Which part of the sphere around the source the malicious UAVs are drawn from.
enum class Hemisphere {
  AboveGround,  // z >= 0: the sphere clipped to non-negative altitude
  AboveSource,  // z >= su.z
  FullSphere,
};

// Geometry, node counts, powers (watts), noise levels and thresholds. Default
// values reproduce the reference simulation setting; ru_pos / mu_pos are
// empty until realize() or an explicit configuration fills them.
struct Scenario {
  Position su_pos{50.0, 50.0, 50.0};
  Position aris_pos{270.0, 120.0, 20.0};
  Position ru_center{350.0, 110.0, 50.0};
  double ru_radius = 5.0;
  double mu_distance = 400.0;
  Hemisphere mu_hemisphere = Hemisphere::AboveGround;

  std::vector<Position> ru_pos;
  std::vector<Position> mu_pos;

  int M = 4;      // SU antennas
  int K = 4;      // legitimate receivers
  int E = 6;      // malicious receivers
  int n_t = 512;  // ARIS elements

  double p_s_max = 10e-3;
  double p_r_max = 20e-3;
  double sigma2 = 1e-13;    // background noise, -100 dBm
  double sigma_v2 = 1e-13;  // ARIS intrinsic noise, -100 dBm
  double sigma_db = 10.0;   // RSS shadowing deviation
  PathLossModel loss{};

  double gamma_st = 10.0;   // min RU SINR (linear)
  double kappa_st = 0.4;    // min MU ISR (linear)
  double varrho_st = 0.1;   // expected-ISR floor (linear)
  double omega = 0.15;

  // Throws DomainError on inconsistent counts, non-positive powers or
  // non-finite coordinates. Placement lists are checked only when non-empty.
  void validate() const;
  bool placed() const {
    return static_cast<int>(ru_pos.size()) == K && static_cast<int>(mu_pos.size()) == E;
  }
};

struct DistanceSet {
  double d_H = 0.0;              // SU - ARIS
  std::vector<double> d_h;       // SU - MU e
  std::vector<double> d_g;       // ARIS - MU e
  std::vector<double> v_ratio;   // d_g / d_h
  std::vector<double> d_ru;      // SU - RU k
  std::vector<double> d_ru_aris; // ARIS - RU k
};

// k points uniformly distributed on the sphere |p - center| = radius.
std::vector<Position> place_rus(const Position& center, double radius, int k, SeededRng& rng);

// e points at distance d_se from su, uniform on the part of the sphere
// admitted by the hemisphere predicate (rejection sampling).
std::vector<Position> place_mus(const Position& su, double d_se, int e, SeededRng& rng,
                                Hemisphere hemi = Hemisphere::AboveGround);

bool in_hemisphere(const Position& p, const Position& su, Hemisphere hemi);

// Euclidean distances for a placed scenario. Coincident nodes -> DomainError.
DistanceSet distances(const Scenario& s);

// Copy of `base` with fresh RU / MU placements drawn from rng.
Scenario realize(const Scenario& base, SeededRng& rng);

}  // namespace aris
