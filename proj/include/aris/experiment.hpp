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

#include <cstdint>
#include <string>
#include <vector>

#include "aris/baselines.hpp"
#include "aris/localization.hpp"
#include "aris/scenario.hpp"

namespace aris {

enum class SweepVariable { DSe, PRMax, NT, ECount, Omega };

std::string to_string(SweepVariable v);
SweepVariable parse_sweep(const std::string& tag);  // throws DomainError

// Copy of `base` with one sweep variable overridden. Values are in SI units
// (metres, watts); the p_r_max sweep also sets P_S^max = P_R^max / 2.
Scenario apply_sweep(const Scenario& base, SweepVariable v, double value);

// Optimizer budgets used for Monte Carlo sweeps: the outer FP loop is capped
// at 60 iterations with a 1e-5 relative tolerance.
SchemeOptions sweep_options();

struct ExperimentSpec {
  SweepVariable sweep_variable = SweepVariable::DSe;
  std::vector<double> sweep_values;
  int trials = 200;
  std::vector<SchemeId> schemes = all_schemes();
  Scenario base{};
  std::uint64_t seed = 1;
  std::string out_path;
  SchemeOptions options = sweep_options();
  MleSearch mle{};
  bool parallel = true;     // OpenMP over (sweep value x trial) cells
  bool misaligned = false;  // include cross-partition paths in SINR / ISR

  void validate() const;
};

struct ResultRow {
  std::string row_type;  // "trial" or "summary"
  std::string scheme;
  std::string sweep_variable;
  double sweep_value = 0.0;
  int trial = 0;  // trial index, or number of feasible trials for summaries
  std::string status;
  double sum_rate = 0.0;
  double mle_rmse = 0.0;    // position error (trial) or RMSE (summary), m
  double crlb_bound = 0.0;  // bound (trial) or RMS bound (summary), m
  double mean_isr = 0.0;
  double n0 = 0.0;
  double sum_ne = 0.0;
  double eta0 = 0.0;
  double iterations = 0.0;

  bool operator==(const ResultRow&) const = default;
};

// One cell: a fresh realisation for (sweep value index, trial) evaluated
// under every scheme listed in spec.schemes, in that order.
std::vector<ResultRow> run_cell(const ExperimentSpec& spec, std::size_t value_index, int trial);

// Trial rows ordered by (sweep value, trial, scheme) followed by one summary
// row per (sweep value, scheme).
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

std::vector<ResultRow> summarize(const ExperimentSpec& spec, const std::vector<ResultRow>& trial_rows);

// Compensated (Neumaier) sum in the given order.
double stable_sum(const std::vector<double>& v);

}  // namespace aris
