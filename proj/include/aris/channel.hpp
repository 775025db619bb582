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
#include <vector>

#include "aris/rng.hpp"
#include "aris/scenario.hpp"

namespace aris {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// rows x cols matrix of i.i.d. CN(0, loss) entries, i.e. sqrt(loss) * Gamma
// with Gamma ~ CN(0, 1). Each component is drawn as N(0, loss / 2).
ComplexMatrix sample_channel(int rows, int cols, double loss, SeededRng& rng);

struct ChannelMoments {
  double mean_abs;  // E|f|  = (sqrt(pi) / 2) * sqrt(loss)
  double mean_sq;   // E|f|^2 = loss
};

ChannelMoments channel_moments(double loss);

// Every channel of one realisation, drawn for the whole surface so that any
// partition can be cut out of it. Receivers see g^H * Theta * H * s.
struct ChannelSet {
  ComplexMatrix h_ru;    // M x K, column k: SU -> RU k
  ComplexMatrix h_mu;    // M x E, column e: SU -> MU e
  ComplexMatrix H;       // n_t x M: SU -> ARIS element n (row n)
  ComplexMatrix g_ru;    // n_t x K, column k: ARIS -> RU k
  ComplexMatrix g_mu;    // n_t x E, column e: ARIS -> MU e

  int n_t() const { return static_cast<int>(H.rows()); }
  int M() const { return static_cast<int>(H.cols()); }
  int K() const { return static_cast<int>(h_ru.cols()); }
  int E() const { return static_cast<int>(h_mu.cols()); }
};

ChannelSet generate_channels(const Scenario& s, const DistanceSet& d, SeededRng& rng);

// Channels seen by the communication-enhancement partition (first n0 elements).
struct CeChannels {
  ComplexMatrix h;  // M x K
  ComplexMatrix H;  // n0 x M
  ComplexMatrix G;  // n0 x K
};

// Channels seen by malicious receiver e and its interference partition
// [offset, offset + n_e).
struct LiChannels {
  ComplexVector h_e;   // M
  ComplexVector g_e0;  // n0: CE elements -> MU e
  ComplexMatrix H_ce;  // n0 x M
  ComplexMatrix H_e;   // n_e x M
  ComplexVector g_ee;  // n_e
};

CeChannels ce_view(const ChannelSet& ch, int n0);
LiChannels li_view(const ChannelSet& ch, int e, int n0, int offset, int n_e);

// Channel set with the ARIS removed: only direct links survive.
CeChannels direct_only(const ChannelSet& ch);

}  // namespace aris
