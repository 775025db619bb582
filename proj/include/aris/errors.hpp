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

#include <stdexcept>
#include <string>

namespace aris {

// Input outside the mathematical domain of an operation (non-finite values,
// non-positive distances, coincident nodes, empty denominators).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A power budget or threshold cannot be met. `margin` is the offending
// quantity (for example eta0 or a discriminant), negative or zero when raised.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, double margin)
      : std::runtime_error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

// An iterative numerical routine (bisection, refinement) failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix that must be inverted is rank deficient.
class SingularError : public std::runtime_error {
 public:
  SingularError(const std::string& what, int rank)
      : std::runtime_error(what), rank_(rank) {}
  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

// Too few observations for the number of unknown parameters.
class UnidentifiableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aris
