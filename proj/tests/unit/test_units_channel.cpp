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


#include <cmath>
#include <limits>

#include "aris/channel.hpp"
#include "aris/errors.hpp"
#include "aris/rng.hpp"
#include "aris/units.hpp"
#include "doctest.h"

using namespace aris;

TEST_CASE("decibel conversions") {
  CHECK(db_to_linear(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(db_to_linear(-37.3) == doctest::Approx(1.8621e-4).epsilon(1e-4));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(watts_to_dbm(1e-3) == doctest::Approx(0.0));
  CHECK_THROWS_AS(db_to_linear(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(db_to_linear(std::nan("")), DomainError);
  CHECK_THROWS_AS(linear_to_db(-1.0), DomainError);
}

TEST_CASE("round trip over forty decades") {
  SeededRng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::pow(10.0, rng.uniform(-20.0, 20.0));
    CHECK(std::abs(db_to_linear(linear_to_db(x)) - x) <= 1e-12 * x);
  }
}

TEST_CASE("path loss") {
  PathLossModel m;
  CHECK(path_loss(1.0, m) == doctest::Approx(m.l0_linear()).epsilon(1e-15));
  PathLossModel sq{-37.3, 2.0};
  CHECK(path_loss(100.0, sq) == doctest::Approx(sq.l0_linear() * 1e-4).epsilon(1e-14));
  // linear and log-domain evaluations agree
  const double lin = path_loss(400.0, m);
  CHECK(lin == doctest::Approx(std::pow(10.0, (-37.3 - 22.0 * std::log10(400.0)) / 10.0)).epsilon(1e-13));
  CHECK(path_loss_db(400.0, m) == doctest::Approx(-37.3 - 22.0 * std::log10(400.0)).epsilon(1e-14));
  CHECK(lin / m.l0_linear() == doctest::Approx(1.866e-6).epsilon(1e-3));
  CHECK_THROWS_AS(path_loss(0.0, m), DomainError);
  CHECK_THROWS_AS(path_loss(-3.0, m), DomainError);
  CHECK_THROWS_AS((PathLossModel{-37.3, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS((PathLossModel{std::nan(""), 2.0}).validate(), DomainError);
}

TEST_CASE("rayleigh samples have the configured moments") {
  for (double loss : {1.0, 4.0, 0.25}) {
    SeededRng rng(derive_seed(5, {static_cast<std::uint64_t>(loss * 100)}));
    const ComplexMatrix f = sample_channel(1000, 1000, loss, rng);
    const double mean_abs = f.cwiseAbs().mean();
    const double mean_sq = f.cwiseAbs2().mean();
    const ChannelMoments mom = channel_moments(loss);
    CHECK(std::abs(mean_sq / loss - 1.0) < 0.01);
    CHECK(std::abs(mean_abs / (0.886226925452758 * std::sqrt(loss)) - 1.0) < 0.01);
    CHECK(std::abs(mean_abs / mom.mean_abs - 1.0) < 0.01);
    CHECK(std::abs(mean_sq / mom.mean_sq - 1.0) < 0.01);
    // circular symmetry: real and imaginary parts carry half the power each
    CHECK(std::abs(f.real().array().square().mean() / (loss / 2) - 1.0) < 0.01);
  }
}

TEST_CASE("closed-form channel moments") {
  CHECK(channel_moments(1.0).mean_abs == doctest::Approx(0.8862).epsilon(1e-4));
  CHECK(channel_moments(1.0).mean_sq == 1.0);
  CHECK(channel_moments(0.25).mean_sq == 0.25);
  CHECK(channel_moments(4.0).mean_abs == doctest::Approx(2.0 * channel_moments(1.0).mean_abs));
  CHECK_THROWS_AS(channel_moments(0.0), DomainError);
}

TEST_CASE("seeded sampling is reproducible") {
  SeededRng a(42), b(42), c(43);
  const ComplexMatrix x = sample_channel(8, 8, 1.0, a);
  const ComplexMatrix y = sample_channel(8, 8, 1.0, b);
  const ComplexMatrix z = sample_channel(8, 8, 1.0, c);
  CHECK(x == y);
  CHECK(x != z);
  CHECK(a.draws() == b.draws());
}

TEST_CASE("derived seeds separate streams") {
  CHECK(derive_seed(1, {0}) != derive_seed(1, {1}));
  CHECK(derive_seed(1, {0, 1}) != derive_seed(1, {1, 0}));
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
}
