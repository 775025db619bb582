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

#include "aris/units.hpp"

#include <cmath>

#include "aris/errors.hpp"

namespace aris {

double db_to_linear(double x_db) {
  if (!std::isfinite(x_db)) throw DomainError("db_to_linear: non-finite input");
  return std::pow(10.0, x_db / 10.0);
}

double linear_to_db(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("linear_to_db: input must be finite and > 0");
  return 10.0 * std::log10(x);
}

void PathLossModel::validate() const {
  if (!std::isfinite(l0_db)) throw DomainError("PathLossModel: l0_db must be finite");
  if (!(exponent > 0.0) || !std::isfinite(exponent)) throw DomainError("PathLossModel: exponent must be > 0");
}

double path_loss(double d, const PathLossModel& model) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("path_loss: distance must be > 0");
  return model.l0_linear() * std::pow(d, -model.exponent);
}

double path_loss_db(double d, const PathLossModel& model) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("path_loss_db: distance must be > 0");
  return model.l0_db - 10.0 * model.exponent * std::log10(d);
}

}  // namespace aris
