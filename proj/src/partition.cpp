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

#include "aris/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "aris/errors.hpp"
#include "aris/units.hpp"

namespace aris {

int PartitionPlan::total_li() const { return std::accumulate(n_e.begin(), n_e.end(), 0); }

int PartitionPlan::li_offset(int e) const {
  return n0 + std::accumulate(n_e.begin(), n_e.begin() + e, 0);
}

void PartitionPlan::validate(int n_t, double p_r_max) const {
  const double rho_sum = rho0 + std::accumulate(rho_e.begin(), rho_e.end(), 0.0);
  const double eta_sum = eta0 + std::accumulate(eta_e.begin(), eta_e.end(), 0.0);
  if (std::abs(rho_sum - 1.0) > 1e-12) throw DomainError("PartitionPlan: element shares do not sum to 1");
  if (std::abs(eta_sum - 1.0) > 1e-12) throw DomainError("PartitionPlan: power shares do not sum to 1");
  if (n0 + total_li() > n_t) throw DomainError("PartitionPlan: element counts exceed the surface");
  if (rho_e.size() != n_e.size() || eta_e.size() != n_e.size() || p_e.size() != n_e.size())
    throw DomainError("PartitionPlan: per-receiver vectors disagree in size");
  auto in_unit = [](double x) { return x >= -1e-15 && x <= 1.0 + 1e-15; };
  if (!in_unit(rho0) || !in_unit(eta0)) throw DomainError("PartitionPlan: shares outside [0,1]");
  for (std::size_t e = 0; e < n_e.size(); ++e) {
    if (!in_unit(rho_e[e]) || !in_unit(eta_e[e])) throw DomainError("PartitionPlan: shares outside [0,1]");
    if (std::abs(p_e[e] - eta_e[e] * p_r_max) > 1e-15 * p_r_max)
      throw DomainError("PartitionPlan: p_e inconsistent with eta_e");
  }
  if (std::abs(p0 - eta0 * p_r_max) > 1e-15 * p_r_max) throw DomainError("PartitionPlan: p0 inconsistent with eta0");
}

PowerShares allocate_power(const Scenario& s, const DistanceSet& d) {
  const double ps = s.p_s_max;
  const double pr = s.p_r_max;
  const double rho = s.varrho_st;
  const double eps = s.loss.exponent;
  double sum_v = 0.0;
  for (double v : d.v_ratio) sum_v += std::pow(v, eps);
  const double eta0 = (pr - rho * ps * sum_v) / (pr * (1.0 + rho * static_cast<double>(s.E)));
  if (!(eta0 > 0.0)) {
    std::ostringstream os;
    os << "allocate_power: expected-ISR floor " << rho << " is unreachable (eta0 = " << eta0 << ")";
    throw InfeasibleError(os.str(), eta0);
  }
  PowerShares out{eta0, {}};
  out.eta_e.reserve(d.v_ratio.size());
  for (double v : d.v_ratio) out.eta_e.push_back(rho * (ps / pr * std::pow(v, eps) + eta0));
  return out;
}

double isr_boundary_residual(const Scenario& s, const DistanceSet& d, const PowerShares& shares, int e) {
  const auto i = static_cast<std::size_t>(e);
  const double v = std::pow(d.v_ratio[i], s.loss.exponent);
  return shares.eta_e[i] * s.p_r_max / (s.p_s_max * v + shares.eta0 * s.p_r_max);
}

double ce_partition_bound(const Scenario& s, double p0, double l_H, const std::vector<double>& ru_losses) {
  if (!(p0 > 0.0) || !(s.p_s_max > 0.0)) throw DomainError("size_ce_partition: powers must be > 0");
  const double ps = s.p_s_max;
  double worst = 0.0;
  for (double l_g : ru_losses) {
    const double num = 16.0 * s.gamma_st * (p0 * l_g * s.sigma_v2 + ps * l_H * s.sigma2 + s.sigma2 * s.sigma_v2);
    const double den = M_PI * M_PI * l_g * l_H * p0 * ps;
    worst = std::max(worst, num / den);
  }
  return worst;
}

int size_ce_partition(const Scenario& s, double p0, double l_H, const std::vector<double>& ru_losses) {
  const double bound = ce_partition_bound(s, p0, l_H, ru_losses);
  if (!std::isfinite(bound) || bound > 1e9) throw InfeasibleError("size_ce_partition: CE requirement unbounded", -bound);
  const double ps = s.p_s_max;
  // integer form of the per-receiver requirement, used to settle ceil() at exact boundaries
  auto holds = [&](long long N) {
    const double x = static_cast<double>(N);
    for (double l_g : ru_losses) {
      const double num = 16.0 * s.gamma_st * (p0 * l_g * s.sigma_v2 + ps * l_H * s.sigma2 + s.sigma2 * s.sigma_v2);
      if (x * (M_PI * M_PI * l_g * l_H * p0 * ps) < num) return false;
    }
    return true;
  };
  auto n = static_cast<long long>(std::ceil(bound));
  if (n > 1 && holds(n - 1)) --n;
  else if (!holds(n) && holds(n + 1)) ++n;
  return static_cast<int>(std::max(1LL, n));
}

double li_partition_constant(const Scenario& s, double p0, double l_H, double kappa_target) {
  return 4.0 / M_PI * kappa_target * l_H * (1.0 + p0 / (l_H * s.p_s_max + s.sigma_v2));
}

int size_li_partition(const Scenario& s, double p0, double p_e, double l_H, double kappa_target) {
  if (!(p_e > 0.0)) throw DomainError("size_li_partition: p_e must be > 0");
  const double a = s.p_s_max * l_H;
  const double c = li_partition_constant(s, p0, l_H, kappa_target);
  const double disc = p_e * p_e - 4.0 * a * c;
  if (disc < 0.0) throw InfeasibleError("size_li_partition: interference target unreachable", disc);
  // smaller root of a N^2 - p_e N + c = 0, written without cancellation
  const double root = 2.0 * c / (p_e + std::sqrt(disc));
  auto n = static_cast<long long>(std::ceil(root));
  auto holds = [&](long long N) {
    const double x = static_cast<double>(N);
    return -a * x * x + p_e * x - c >= 0.0;
  };
  if (n > 0 && holds(n - 1)) --n;
  else if (!holds(n) && holds(n + 1)) ++n;
  return static_cast<int>(n);
}

PartitionCounts finalize_partition(int n0, const std::vector<int>& n_e, int n_t) {
  if (n0 < 1) throw DomainError("finalize_partition: n0 must be >= 1");
  if (n0 > n_t) throw InfeasibleError("finalize_partition: CE partition larger than the surface", n_t - n0);
  long long total = 0;
  for (int v : n_e) {
    if (v < 0) throw DomainError("finalize_partition: negative element count");
    total += v;
  }
  PartitionCounts out{n0, n_e};
  if (n0 + total >= n_t) {
    if (total > 0) {
      const long long budget = n_t - n0;
      for (std::size_t e = 0; e < n_e.size(); ++e)
        out.n_e[e] = static_cast<int>(static_cast<long long>(n_e[e]) * budget / total);
    }
  } else {
    out.n0 = n_t - static_cast<int>(total);
  }
  return out;
}

namespace {

PartitionPlan plan_from(const Scenario& s, double eta0, const std::vector<double>& eta_e, int n0,
                        const std::vector<int>& n_e) {
  PartitionPlan p;
  p.eta0 = eta0;
  p.eta_e = eta_e;
  p.n0 = n0;
  p.n_e = n_e;
  p.p0 = eta0 * s.p_r_max;
  double rho_li = 0.0;
  for (std::size_t e = 0; e < n_e.size(); ++e) {
    p.rho_e.push_back(static_cast<double>(n_e[e]) / s.n_t);
    rho_li += p.rho_e.back();
    p.p_e.push_back(eta_e[e] * s.p_r_max);
  }
  p.rho0 = 1.0 - rho_li;
  return p;
}

}  // namespace

PartitionPlan adaptive_plan(const Scenario& s, const DistanceSet& d) {
  const PowerShares shares = allocate_power(s, d);
  const double p0 = shares.eta0 * s.p_r_max;
  const double l_H = path_loss(d.d_H, s.loss);
  std::vector<double> ru_losses;
  for (double dk : d.d_ru_aris) ru_losses.push_back(path_loss(dk, s.loss));
  const int n0 = size_ce_partition(s, p0, l_H, ru_losses);
  std::vector<int> n_e;
  const double kappa_target = s.omega * s.kappa_st;
  for (double eta : shares.eta_e) n_e.push_back(size_li_partition(s, p0, eta * s.p_r_max, l_H, kappa_target));
  const PartitionCounts counts = finalize_partition(n0, n_e, s.n_t);
  return plan_from(s, shares.eta0, shares.eta_e, counts.n0, counts.n_e);
}

PartitionPlan fixed_plan(const Scenario& s) {
  const int E = s.E;
  if (E == 0) return no_partition_plan(s);
  const double share = 0.5 / E;
  std::vector<double> eta_e(static_cast<std::size_t>(E), share);
  std::vector<int> n_e(static_cast<std::size_t>(E), static_cast<int>(std::floor(s.n_t * share)));
  PartitionPlan p = plan_from(s, 0.5, eta_e, static_cast<int>(std::floor(0.5 * s.n_t)), n_e);
  p.rho0 = 0.5;
  p.rho_e.assign(static_cast<std::size_t>(E), share);
  return p;
}

PartitionPlan no_partition_plan(const Scenario& s) {
  const auto E = static_cast<std::size_t>(s.E);
  PartitionPlan p = plan_from(s, 1.0, std::vector<double>(E, 0.0), s.n_t, std::vector<int>(E, 0));
  p.rho0 = 1.0;
  return p;
}

std::string describe(const PartitionPlan& plan) {
  std::ostringstream os;
  os << "n0=" << plan.n0 << " eta0=" << plan.eta0 << " p0=" << plan.p0 << "W";
  for (std::size_t e = 0; e < plan.n_e.size(); ++e)
    os << " | e" << e << ": n=" << plan.n_e[e] << " eta=" << plan.eta_e[e] << " p=" << plan.p_e[e] << "W";
  return os.str();
}

}  // namespace aris
