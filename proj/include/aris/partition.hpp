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

#include <string>
#include <vector>

#include "aris/scenario.hpp"

namespace aris {

// Element shares rho, power shares eta, integer element counts and power
// budgets (watts) of the virtual partition. Index 0 of the surface belongs to
// the communication-enhancement (CE) partition; elements
// [n0 + sum_{i<e} n_e[i], ... + n_e[e]) form the interference partition of
// malicious receiver e.
struct PartitionPlan {
  double rho0 = 1.0;
  std::vector<double> rho_e;
  double eta0 = 1.0;
  std::vector<double> eta_e;
  int n0 = 0;
  std::vector<int> n_e;
  double p0 = 0.0;
  std::vector<double> p_e;

  int total_li() const;
  int li_offset(int e) const;
  // Throws DomainError if share or budget invariants are violated.
  void validate(int n_t, double p_r_max) const;
};

struct PowerShares {
  double eta0;
  std::vector<double> eta_e;
};

// Closed-form ARIS power split that places every malicious receiver exactly on
// the expected-ISR floor varrho_st (average channel, P_S = P_S^max).
// Throws InfeasibleError carrying eta0 when eta0 <= 0.
PowerShares allocate_power(const Scenario& s, const DistanceSet& d);

// Left-hand side of the expected-ISR boundary for receiver e; equals varrho_st
// for the output of allocate_power.
double isr_boundary_residual(const Scenario& s, const DistanceSet& d, const PowerShares& shares, int e);

// Smallest CE element count meeting gamma_st at every RU under average channels
// (clamped to >= 1). `ru_losses` are the linear ARIS -> RU losses L_{g,k}.
int size_ce_partition(const Scenario& s, double p0, double l_H, const std::vector<double>& ru_losses);

// Pre-ceiling CE count for the receiver that binds; exposed for tests.
double ce_partition_bound(const Scenario& s, double p0, double l_H, const std::vector<double>& ru_losses);

// Smallest element count with -P_S L_H N^2 + p_e N - C >= 0,
// C = (4/pi) kappa_target L_H (1 + p0 / (L_H P_S + sigma_v2)).
// Throws InfeasibleError (margin = discriminant) when no real root exists.
int size_li_partition(const Scenario& s, double p0, double p_e, double l_H, double kappa_target);

double li_partition_constant(const Scenario& s, double p0, double l_H, double kappa_target);

struct PartitionCounts {
  int n0;
  std::vector<int> n_e;
};

// Reconcile requested counts with the surface size: when the request does not
// fit, n0 is kept and the interference partitions shrink proportionally;
// otherwise the surplus goes to the CE partition.
PartitionCounts finalize_partition(int n0, const std::vector<int>& n_e, int n_t);

// Full adaptive plan: power split, both sizing rules and the final partition.
PartitionPlan adaptive_plan(const Scenario& s, const DistanceSet& d);

// Hard-coded 0.5 / (0.5 / E) shares.
PartitionPlan fixed_plan(const Scenario& s);

// Whole surface and full power to communication enhancement.
PartitionPlan no_partition_plan(const Scenario& s);

std::string describe(const PartitionPlan& plan);

}  // namespace aris
