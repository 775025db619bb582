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

#include "aris/linalg.hpp"

#include <cmath>

namespace aris::linalg {

Eigen::MatrixXcd hermitian_solve(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(A);
  if (ldlt.info() == Eigen::Success && ldlt.rcond() >= 1e-12) return ldlt.solve(B);
  const double dim = static_cast<double>(A.rows());
  double ridge = 1e-12 * std::abs(A.trace().real()) / dim;
  if (!(ridge > 0.0)) ridge = 1e-300;
  Eigen::MatrixXcd reg = A;
  reg.diagonal().array() += ridge;
  return reg.ldlt().solve(B);
}

double shrink_multiplier(const std::function<double(double)>& power, double lo, double hi, double budget, double tol,
                         int max_iter) {
  const double target = 1.0 / std::sqrt(budget);
  auto phi = [&](double p) { return (p > 0.0 ? 1.0 / std::sqrt(p) : HUGE_VAL) - target; };
  double f_lo = phi(power(lo));
  double p_hi = power(hi);
  double f_hi = phi(p_hi);
  int side = 0;
  for (int it = 0; it < max_iter; ++it) {
    if (p_hi >= budget * (1.0 - tol) || hi - lo <= tol * hi) break;
    double mid = hi - f_hi * (hi - lo) / (f_hi - f_lo);
    if (!(mid > lo && mid < hi) || !std::isfinite(mid)) mid = 0.5 * (lo + hi);
    const double p_mid = power(mid);
    const double f_mid = phi(p_mid);
    if (p_mid <= budget) {
      hi = mid;
      p_hi = p_mid;
      f_hi = f_mid;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    } else {
      lo = mid;
      f_lo = f_mid;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    }
  }
  return hi;
}

}  // namespace aris::linalg
