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
#include <limits>
#include <vector>

#include "aris/partition.hpp"
#include "aris/rng.hpp"
#include "aris/scenario.hpp"

// RSS quantities are in dBm. The adversary estimates
// [x, y, z, G_R, p_S] (or [x, y, z, p_S] when no surface is present).

namespace aris {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct RssComponents {
  double p_d = kNegInf;  // direct path
  double p_r = kNegInf;  // reflected path
  double p_n = kNegInf;  // artificial noise
  double c = kNegInf;    // power sum of the three
};

// What actually left the source and the surface in one realisation.
struct RssTruth {
  double p_s = 0.0;            // total SU transmit power, W
  double ce_gain = 0.0;        // sum of squared CE amplitudes
  std::vector<int> n_e;        // interference partition sizes
  std::vector<double> an_power;  // ||v_e||^2, W (0 for none)
  bool aris_present = true;
};

// Planning-level truth: P_S = P_S^max and AN power p_e - n_e P_S L_H, clamped
// below at min_an_power (the clamp count is returned through `clamped`).
RssTruth rss_truth_from_plan(const Scenario& s, const DistanceSet& d, const PartitionPlan& plan,
                             const Eigen::VectorXd& ce_amplitudes, double min_an_power = 1e-12,
                             int* clamped = nullptr);

RssComponents rss_components(int e, const Scenario& s, const DistanceSet& d, const RssTruth& t);
RssComponents rss_components(int e, const Scenario& s, const PartitionPlan& plan, const Eigen::VectorXd& ce_amplitudes);

double combine_db(double p_d, double p_r, double p_n);

struct IsrExpectation {
  double varrho;  // P_n / (P_d + P_r)
  double alpha0;  // 1 / (1 + varrho)
};
IsrExpectation expected_isr(const RssComponents& c);

// Observation R_e = c_e + sigma_db * N(0, 1).
Eigen::VectorXd sample_observations(const Eigen::VectorXd& means, double sigma_db, SeededRng& rng);

struct ParamVector {
  double x = 0.0, y = 0.0, z = 0.0;
  double g_r = 0.0;  // dB
  double p_s = 0.0;  // dBm

  Position position() const { return {x, y, z}; }
};

// Everything the colluding receivers know: their own positions, the surface
// position, the propagation model and each one's AN level.
struct AdversaryModel {
  std::vector<Position> mu_pos;
  Position aris_pos{0.0, 0.0, 0.0};
  PathLossModel loss{};
  std::vector<double> p_n;  // dBm, -inf for none
  bool reflected = true;

  int E() const { return static_cast<int>(mu_pos.size()); }
  int n_params() const { return reflected ? 5 : 4; }
  Eigen::VectorXd to_vector(const ParamVector& p) const;
  ParamVector from_vector(const Eigen::VectorXd& v) const;

  double predict(int e, const ParamVector& p) const;
  Eigen::VectorXd predict_all(const ParamVector& p) const;
  // Analytic gradient of c_e with respect to the estimated parameters.
  Eigen::VectorXd gradient(int e, const ParamVector& p) const;
};

AdversaryModel make_adversary(const Scenario& s, const std::vector<RssComponents>& comps, bool aris_present);

struct MleSearch {
  double half_width = 300.0;  // m, around the MU centroid
  double pitch = 30.0;        // m
  double g_r_lo = 70.0, g_r_hi = 110.0, g_r_step = 2.0;      // dB
  double p_s_lo = 0.0, p_s_hi = 20.0, p_s_step = 2.0;        // dBm
  int gn_max_iter = 100;
  double gn_step_tol = 1e-6;
  bool parallel = true;

  void validate() const;
};

// Axis values of the search grid for a given centre.
struct SearchGrid {
  std::vector<double> xs, ys, zs, g_r, p_s;
  std::size_t positions() const { return xs.size() * ys.size() * zs.size(); }
};
SearchGrid make_grid(const AdversaryModel& m, const MleSearch& cfg);

struct GridBest {
  ParamVector param;
  double cost = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

// Exhaustive least-squares scan. The serial and OpenMP versions return the
// same point (ties resolved by the lowest flat index).
GridBest grid_search_serial(const Eigen::VectorXd& r, const AdversaryModel& m, const SearchGrid& g);
GridBest grid_search_parallel(const Eigen::VectorXd& r, const AdversaryModel& m, const SearchGrid& g);

struct MleResult {
  ParamVector estimate;
  ParamVector grid_point;
  double cost = 0.0;
  int iterations = 0;
  bool refined = true;  // false: refinement diverged, grid point returned
};

double mle_cost(const Eigen::VectorXd& r, const AdversaryModel& m, const ParamVector& p);

// Least squares over the search region: grid search, then Gauss-Newton with
// the iterates projected onto the grid's bounding box. Fewer than n_params
// receivers -> UnidentifiableError.
MleResult mle_estimate(const Eigen::VectorXd& r, const AdversaryModel& m, const MleSearch& cfg);

struct FimReport {
  Eigen::MatrixXd j;
  Eigen::Matrix3d crlb_block;
  double rmse_bound = 0.0;
  std::vector<Eigen::VectorXd> grad_vecs;  // v_e (unweighted)
  std::vector<double> alpha0, alpha, varrho;
};

// J = sigma_db^-2 sum_e alpha0_e^2 v_e v_e^T for the true source parameters.
// Rank-deficient J -> SingularError carrying the rank.
FimReport fim_crlb(const Scenario& s, const std::vector<RssComponents>& comps, bool aris_present = true);

}  // namespace aris
