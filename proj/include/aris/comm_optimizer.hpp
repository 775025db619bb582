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
#include "aris/partition.hpp"

namespace aris {

// Alternating-optimisation settings shared by both FP loops and WMMSE.
struct FpConfig {
  int max_outer_iters = 200;
  double rel_tol = 1e-7;      // convergence threshold on the objective
  double bisect_tol = 1e-13;  // relative width of the final multiplier bracket
  int bisect_max = 400;
  void validate() const;
};

// One instance of the CE sub-problem: channels of the CE partition plus the
// noise levels and both power budgets.
struct CeProblem {
  CeChannels ch;
  double sigma2 = 1e-13;
  double sigma_v2 = 1e-13;
  double p_s_max = 10e-3;
  double p0 = 10e-3;

  int M() const { return static_cast<int>(ch.h.rows()); }
  int K() const { return static_cast<int>(ch.h.cols()); }
  int n0() const { return static_cast<int>(ch.H.rows()); }
};

CeProblem make_ce_problem(const ChannelSet& ch, const Scenario& s, const PartitionPlan& plan);

// Optimiser state: beamformers (column k = w_k), CE reflection coefficients,
// FP auxiliaries and the objective value in nats.
struct CeState {
  ComplexMatrix w;
  ComplexVector theta;
  Eigen::VectorXd eps;
  ComplexVector ups;
  double q3 = 0.0;
  int iterations = 0;
};

struct CeTraceRow {
  int iteration;
  double q3;           // surrogate at tight auxiliaries == sum rate in nats
  double q3_updated;   // surrogate after the beamformer and precoder steps
  double sum_rate;     // bits/s/Hz
  double su_margin;    // P_S^max - sum ||w_k||^2
  double aris_margin;  // P0 - ARIS output power
};

// Effective channels, column k = hbar_k = h_k + H^H (g_k .* conj(theta)).
ComplexMatrix effective_channels(const CeProblem& p, const ComplexVector& theta);

double sinr_ru(int k, const CeState& st, const CeProblem& p);
Eigen::VectorXd sinr_all(const CeState& st, const CeProblem& p);
double sum_rate(const CeState& st, const CeProblem& p);

double su_power(const ComplexMatrix& w);
// sum_k ||Theta H w_k||^2 + ||Theta||_F^2 sigma_v^2
double aris_power(const CeProblem& p, const ComplexMatrix& w, const ComplexVector& theta);

// FP surrogate (quadratic transform with the Lagrangian dual of the log term).
double q3_value(const CeState& st, const CeProblem& p);

struct CeAuxiliaries {
  Eigen::VectorXd eps;
  ComplexVector ups;
};

// eps_k = SINR_k, ups_k = sqrt(1 + eps_k) hbar_k^H w_k / (sum_a |hbar_k^H w_a|^2 + noise).
CeAuxiliaries update_auxiliaries(const CeState& st, const CeProblem& p);

// Beamformer block: w = (B + l1 I + l2 C)^-1 alpha with both multipliers
// found by nested bisection. Throws InfeasibleError if the ARIS budget is
// already consumed by amplified intrinsic noise.
ComplexMatrix update_beamformer(const CeState& st, const CeProblem& p, const FpConfig& cfg);

// Quadratic pieces of the precoder block: maximise 2Re{ups^H theta} - theta^H Lambda theta
// subject to theta^H Psi theta <= p0. Lambda = diag(delta) + V V^H with one
// column of V per (receiver, stream) pair; Psi is diagonal.
struct PrecoderQuadratic {
  ComplexVector upsilon;
  Eigen::VectorXd delta;
  ComplexMatrix V;
  Eigen::VectorXd psi;

  ComplexMatrix lambda() const;
};
PrecoderQuadratic precoder_quadratic(const CeState& st, const CeProblem& p);
double precoder_objective(const PrecoderQuadratic& q, const ComplexVector& theta);

// Precoder block: theta = (Lambda + mu Psi)^-1 upsilon, mu >= 0 bisected.
ComplexVector update_precoder(const CeState& st, const CeProblem& p, const FpConfig& cfg);

// Matched-filter beamformers with an equal power split, CE phases aligned to
// the first receiver's cascaded channel and equal amplitudes filling 90 % of p0.
CeState initial_ce_state(const CeProblem& p);

CeState optimize_ce(const CeProblem& p, const FpConfig& cfg, CeState init,
                    std::vector<CeTraceRow>* trace = nullptr);

}  // namespace aris
