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

#include "aris/baselines.hpp"
#include "aris/localization.hpp"
#include "aris/scenario.hpp"

// Flat "key = value" configuration. '#' starts a comment. Powers accept a
// W, mW, dBm or dBW suffix (bare numbers are watts); thresholds accept a dB
// suffix (bare numbers are linear); positions are "x, y, z" and position
// lists separate points with ';'. Unknown keys are rejected.
//
//   su_pos, aris_pos, ru_center     position (m)
//   ru_radius, mu_distance (d_se)   m
//   mu_hemisphere                   above_ground | above_source | full_sphere
//   ru_pos, mu_pos                  position lists (optional, fixes placement)
//   M, K, E, n_t                    counts
//   p_s_max, p_r_max, sigma2, sigma_v2   power
//   sigma_db, l0_db                 dB
//   exponent, omega                 plain numbers
//   gamma_st, kappa_st, varrho_st   threshold
//   fp.max_outer_iters, fp.rel_tol, fp.bisect_tol, fp.bisect_max
//   li.random_restarts, li.max_sweeps, li.sweep_tol
//   mle.half_width, mle.pitch, mle.g_r_lo, mle.g_r_hi, mle.g_r_step,
//   mle.p_s_lo, mle.p_s_hi, mle.p_s_step (dBm), mle.gn_max_iter, mle.gn_step_tol
//   min_an_power                    power

namespace aris {

struct RunConfig {
  Scenario scenario{};
  SchemeOptions options{};
  MleSearch mle{};
};

// Parses a power value with optional unit suffix into watts.
double parse_power(const std::string& text);
// Parses a threshold with optional dB suffix into a linear ratio.
double parse_threshold(const std::string& text);

// Applies every assignment in `text` on top of `base`. Errors carry the
// line number.
RunConfig parse_config(const std::string& text, const RunConfig& base = RunConfig{});
RunConfig load_config(const std::string& path, const RunConfig& base = RunConfig{});

}  // namespace aris
