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

#include <vector>

#include "aris/channel.hpp"
#include "aris/comm_optimizer.hpp"
#include "aris/partition.hpp"
#include "aris/rng.hpp"

namespace aris {

// Interference sub-problem of malicious receiver e for a fixed CE solution.
struct LiProblem {
  ComplexVector hbar_e;  // h_e + H_ce^H (g_e0 .* conj(theta)): direct + CE path
  ComplexMatrix H_e;     // n_e x M
  ComplexVector g_ee;    // n_e
  ComplexMatrix w;       // M x K beamformers
  double p_e = 0.0;      // partition power budget
  double p_v = 0.0;      // AN budget p_e - sum_k ||H_e w_k||^2

  int n_e() const { return static_cast<int>(g_ee.size()); }
};

// Pass-through signal power of the interference partition.
double li_signal_power(const ComplexMatrix& H_e, const ComplexMatrix& w);

LiProblem make_li_problem(const ChannelSet& ch, const PartitionPlan& plan, int e, const CeState& ce);

struct LiState {
  ComplexVector theta;  // unit modulus
  ComplexVector v;      // AN vector
  std::complex<double> xi{0.0, 0.0};
  double q4 = 0.0;
  int iterations = 0;
};

struct LiConfig {
  int random_restarts = 16;
  int max_sweeps = 1000;
  double sweep_tol = 1e-10;
  std::uint64_t seed = 0x5eedULL;
};

struct LiTraceRow {
  int iteration;
  double q4;  // equals the ISR at the tight auxiliary
  double isr;
  double an_margin;  // p_e - total partition output power
};

double isr_mu(const LiState& li, const LiProblem& p);

// xi = (g^H Theta v) / sum_k |(hbar^H + g^H Theta H_e) w_k|^2; throws
// DomainError when the denominator vanishes.
std::complex<double> update_xi(const LiState& li, const LiProblem& p);

// 2 Re{conj(xi) g^H Theta v} - |xi|^2 sum_k |(hbar^H + g^H Theta H_e) w_k|^2
double q4_value(const LiState& li, const LiProblem& p);

// Full-budget AN along Theta^H g (phase aligned with xi). Throws
// InfeasibleError when p_v <= 0.
ComplexVector update_an(const LiState& li, const LiProblem& p);

// Generic top-eigenvector AN for comparison with the rank-one shortcut.
ComplexVector update_an_eigen(const LiState& li, const LiProblem& p);

// Unit-modulus quadratic program max 2Re{ups^H theta} - theta^H Lambda theta,
// Lambda = W W^H, lifted to z = [theta; t] with D = [[-Lambda, ups], [ups^H, 0]].
// li_quadratic builds it with the emitted AN Theta v held fixed, so only the
// signal leakage term depends on theta.
struct HomogenizedProblem {
  ComplexVector upsilon;
  ComplexMatrix W;  // n x r factor of Lambda

  int n() const { return static_cast<int>(upsilon.size()); }
  ComplexMatrix d_matrix() const;
  double objective(const ComplexVector& theta) const;
  double lifted_objective(const ComplexVector& z) const;  // z^H D z
};

HomogenizedProblem li_quadratic(const LiState& li, const LiProblem& p);

// Element-wise coordinate ascent from `start` (lifted internally with t = 1).
// Returns theta = z / t with every entry of unit modulus.
ComplexVector coordinate_ascent(const HomogenizedProblem& hp, const ComplexVector& start, const LiConfig& cfg);

// Best of coordinate ascent from the current precoder, the phase-aligned start
// and cfg.random_restarts random starts. Callers keep Theta v unchanged by
// re-expressing v for the new precoder.
ComplexVector update_precoder_li(const LiState& li, const LiProblem& p, const LiConfig& cfg);

LiState initial_li_state(const LiProblem& p);

LiState optimize_li(const LiProblem& p, const FpConfig& cfg, const LiConfig& li_cfg, LiState init,
                    std::vector<LiTraceRow>* trace = nullptr);

}  // namespace aris
