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

#include "aris/channel.hpp"

#include <cmath>

#include "aris/errors.hpp"

namespace aris {

ComplexMatrix sample_channel(int rows, int cols, double loss, SeededRng& rng) {
  if (!(loss > 0.0) || !std::isfinite(loss)) throw DomainError("sample_channel: loss must be > 0");
  if (rows < 0 || cols < 0) throw DomainError("sample_channel: negative dimension");
  ComplexMatrix m(rows, cols);
  // column-major fill keeps the draw order tied to Eigen's storage order
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = rng.complex_normal(loss);
  return m;
}

ChannelMoments channel_moments(double loss) {
  if (!(loss > 0.0)) throw DomainError("channel_moments: loss must be > 0");
  return {0.5 * std::sqrt(M_PI) * std::sqrt(loss), loss};
}

ChannelSet generate_channels(const Scenario& s, const DistanceSet& d, SeededRng& rng) {
  ChannelSet ch;
  const int M = s.M, K = s.K, E = s.E, N = s.n_t;
  ch.h_ru.resize(M, K);
  for (int k = 0; k < K; ++k)
    ch.h_ru.col(k) = sample_channel(M, 1, path_loss(d.d_ru[static_cast<std::size_t>(k)], s.loss), rng);
  ch.h_mu.resize(M, E);
  for (int e = 0; e < E; ++e)
    ch.h_mu.col(e) = sample_channel(M, 1, path_loss(d.d_h[static_cast<std::size_t>(e)], s.loss), rng);
  ch.H = sample_channel(N, M, path_loss(d.d_H, s.loss), rng);
  ch.g_ru.resize(N, K);
  for (int k = 0; k < K; ++k)
    ch.g_ru.col(k) = sample_channel(N, 1, path_loss(d.d_ru_aris[static_cast<std::size_t>(k)], s.loss), rng);
  ch.g_mu.resize(N, E);
  for (int e = 0; e < E; ++e)
    ch.g_mu.col(e) = sample_channel(N, 1, path_loss(d.d_g[static_cast<std::size_t>(e)], s.loss), rng);
  return ch;
}

CeChannels ce_view(const ChannelSet& ch, int n0) {
  if (n0 < 0 || n0 > ch.n_t()) throw DomainError("ce_view: n0 out of range");
  return {ch.h_ru, ch.H.topRows(n0), ch.g_ru.topRows(n0)};
}

LiChannels li_view(const ChannelSet& ch, int e, int n0, int offset, int n_e) {
  if (e < 0 || e >= ch.E()) throw DomainError("li_view: MU index out of range");
  if (n0 < 0 || offset < n0 || n_e < 0 || offset + n_e > ch.n_t())
    throw DomainError("li_view: element range out of bounds");
  LiChannels v;
  v.h_e = ch.h_mu.col(e);
  v.g_e0 = ch.g_mu.col(e).head(n0);
  v.H_ce = ch.H.topRows(n0);
  v.H_e = ch.H.middleRows(offset, n_e);
  v.g_ee = ch.g_mu.col(e).segment(offset, n_e);
  return v;
}

CeChannels direct_only(const ChannelSet& ch) {
  return {ch.h_ru, ComplexMatrix(0, ch.M()), ComplexMatrix(0, ch.K())};
}

}  // namespace aris
