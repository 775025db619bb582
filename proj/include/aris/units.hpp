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

// Decibel conventions and large-scale path loss. All power arithmetic inside
// the library is carried out in linear watts; dB, dBm and dBW only appear at
// configuration and reporting boundaries.

namespace aris {

double db_to_linear(double x_db);
double linear_to_db(double x);

inline double dbm_to_watts(double dbm) { return db_to_linear(dbm) * 1e-3; }
inline double watts_to_dbm(double w) { return linear_to_db(w) + 30.0; }

struct PathLossModel {
  double l0_db = -37.3;   // loss at the 1 m reference distance
  double exponent = 2.2;  // path-loss exponent

  // Throws DomainError if the exponent is not positive or l0 is not finite.
  void validate() const;
  double l0_linear() const { return db_to_linear(l0_db); }
};

// L = L0 * d^-exponent (linear). d must be > 0.
double path_loss(double d, const PathLossModel& model);

// 10*lg(L) computed in the log domain.
double path_loss_db(double d, const PathLossModel& model);

}  // namespace aris
