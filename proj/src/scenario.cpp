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

#include "aris/scenario.hpp"

#include <cmath>
#include <string>

#include "aris/errors.hpp"

namespace aris {

namespace {

bool finite(const Position& p) { return p.allFinite(); }

Position unit_sphere_point(SeededRng& rng) {
  // Marsaglia-free variant: uniform z and azimuth give a uniform sphere point.
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * M_PI);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

double checked_distance(const Position& a, const Position& b, const char* what) {
  const double d = (a - b).norm();
  if (!(d > 0.0)) throw DomainError(std::string("distances: coincident nodes (") + what + ")");
  return d;
}

}  // namespace

void Scenario::validate() const {
  if (M < 1) throw DomainError("scenario: M must be >= 1");
  if (K < 1) throw DomainError("scenario: K must be >= 1");
  if (E < 0) throw DomainError("scenario: E must be >= 0");
  if (n_t < 1) throw DomainError("scenario: n_t must be >= 1");
  for (double p : {p_s_max, p_r_max, sigma2, sigma_v2})
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("scenario: powers must be finite and > 0");
  if (!(sigma_db >= 0.0)) throw DomainError("scenario: sigma_db must be >= 0");
  if (!(ru_radius > 0.0) || !(mu_distance > 0.0)) throw DomainError("scenario: radii must be > 0");
  for (double t : {gamma_st, kappa_st, varrho_st, omega})
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("scenario: thresholds must be finite and >= 0");
  loss.validate();
  if (!finite(su_pos) || !finite(aris_pos) || !finite(ru_center))
    throw DomainError("scenario: non-finite coordinates");
  if (!ru_pos.empty() && static_cast<int>(ru_pos.size()) != K)
    throw DomainError("scenario: ru_pos size does not match K");
  if (!mu_pos.empty() && static_cast<int>(mu_pos.size()) != E)
    throw DomainError("scenario: mu_pos size does not match E");
  for (const auto& p : ru_pos)
    if (!finite(p)) throw DomainError("scenario: non-finite RU coordinates");
  for (const auto& p : mu_pos)
    if (!finite(p)) throw DomainError("scenario: non-finite MU coordinates");
}

std::vector<Position> place_rus(const Position& center, double radius, int k, SeededRng& rng) {
  if (!(radius > 0.0)) throw DomainError("place_rus: radius must be > 0");
  std::vector<Position> out;
  if (k <= 0) return out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.push_back(center + radius * unit_sphere_point(rng));
  return out;
}

bool in_hemisphere(const Position& p, const Position& su, Hemisphere hemi) {
  switch (hemi) {
    case Hemisphere::AboveGround: return p.z() >= 0.0;
    case Hemisphere::AboveSource: return p.z() >= su.z();
    case Hemisphere::FullSphere: return true;
  }
  return true;
}

std::vector<Position> place_mus(const Position& su, double d_se, int e, SeededRng& rng, Hemisphere hemi) {
  if (!(d_se > 0.0)) throw DomainError("place_mus: d_se must be > 0");
  if (hemi == Hemisphere::AboveGround && su.z() + d_se < 0.0)
    throw DomainError("place_mus: sphere lies entirely below ground");
  std::vector<Position> out;
  if (e <= 0) return out;
  out.reserve(static_cast<std::size_t>(e));
  while (static_cast<int>(out.size()) < e) {
    Position p = su + d_se * unit_sphere_point(rng);
    if (in_hemisphere(p, su, hemi)) out.push_back(p);
  }
  return out;
}

DistanceSet distances(const Scenario& s) {
  if (!s.placed()) throw DomainError("distances: scenario has no RU/MU placement");
  DistanceSet d;
  d.d_H = checked_distance(s.su_pos, s.aris_pos, "SU-ARIS");
  const auto E = static_cast<std::size_t>(s.E);
  d.d_h.resize(E);
  d.d_g.resize(E);
  d.v_ratio.resize(E);
  for (std::size_t e = 0; e < E; ++e) {
    d.d_h[e] = checked_distance(s.su_pos, s.mu_pos[e], "SU-MU");
    d.d_g[e] = checked_distance(s.aris_pos, s.mu_pos[e], "ARIS-MU");
    d.v_ratio[e] = d.d_g[e] / d.d_h[e];
  }
  const auto K = static_cast<std::size_t>(s.K);
  d.d_ru.resize(K);
  d.d_ru_aris.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    d.d_ru[k] = checked_distance(s.su_pos, s.ru_pos[k], "SU-RU");
    d.d_ru_aris[k] = checked_distance(s.aris_pos, s.ru_pos[k], "ARIS-RU");
  }
  return d;
}

Scenario realize(const Scenario& base, SeededRng& rng) {
  Scenario s = base;
  s.ru_pos = place_rus(base.ru_center, base.ru_radius, base.K, rng);
  s.mu_pos = place_mus(base.su_pos, base.mu_distance, base.E, rng, base.mu_hemisphere);
  return s;
}

}  // namespace aris
