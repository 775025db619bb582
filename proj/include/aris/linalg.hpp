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

#include <Eigen/Dense>
#include <functional>

namespace aris::linalg {

// Solves A X = B for Hermitian positive (semi)definite A. When the LDLT
// reciprocal condition estimate falls below 1e-12 a ridge of
// 1e-12 * trace(A) / dim is added before solving.
Eigen::MatrixXcd hermitian_solve(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

// Multiplier search for a power curve p(mu) that is nonincreasing in mu.
// Requires p(lo) > budget >= p(hi) and returns a feasible mu (p(mu) <= budget)
// with either |p(mu) - budget| <= tol * budget or a bracket narrower than
// tol * mu. Uses Illinois regula falsi on 1/sqrt(p), falling back to
// bisection whenever the interpolated point leaves the bracket.
double shrink_multiplier(const std::function<double(double)>& power, double lo, double hi, double budget, double tol,
                         int max_iter);

}  // namespace aris::linalg
