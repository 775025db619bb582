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


// Shared generators and scalar-loop reference evaluators for the test suites.
// The references are written element by element on purpose and do not call
// the library's evaluators.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "aris/baselines.hpp"
#include "aris/channel.hpp"
#include "aris/comm_optimizer.hpp"
#include "aris/li_optimizer.hpp"
#include "aris/partition.hpp"
#include "aris/rng.hpp"
#include "aris/scenario.hpp"

namespace aris::test {

using cd = std::complex<double>;

struct Instance {
  Scenario s;
  DistanceSet d;
  ChannelSet ch;
};

inline Instance table_instance(std::uint64_t seed, Scenario base = Scenario{}) {
  Instance in;
  SeededRng geo(derive_seed(seed, {0}));
  in.s = realize(base, geo);
  in.d = distances(in.s);
  SeededRng chan(derive_seed(seed, {1}));
  in.ch = generate_channels(in.s, in.d, chan);
  return in;
}

inline ComplexMatrix gaussian(int rows, int cols, SeededRng& rng, double var = 1.0) {
  ComplexMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = rng.complex_normal(var);
  return m;
}

inline ComplexVector phasors(int n, SeededRng& rng) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = std::polar(1.0, rng.uniform(-M_PI, M_PI));
  return v;
}

// CE sub-problem drawn from the default geometry with the first n0 elements.
inline CeProblem physical_ce_problem(std::uint64_t seed, int n0, int M = 4, int K = 4) {
  Scenario base;
  base.M = M;
  base.K = K;
  const Instance in = table_instance(seed, base);
  CeProblem p;
  p.ch = ce_view(in.ch, n0);
  p.sigma2 = in.s.sigma2;
  p.sigma_v2 = in.s.sigma_v2;
  p.p_s_max = in.s.p_s_max;
  p.p0 = 0.5 * in.s.p_r_max;
  return p;
}

// Unit-scale CE sub-problem for brute-force comparisons.
inline CeProblem normalized_ce_problem(SeededRng& rng, int M, int K, int n0) {
  CeProblem p;
  p.ch.h = gaussian(M, K, rng, 0.3);
  p.ch.H = gaussian(n0, M, rng);
  p.ch.G = gaussian(n0, K, rng);
  p.sigma2 = 0.1;
  p.sigma_v2 = 0.05;
  p.p_s_max = 1.0;
  p.p0 = 2.0;
  return p;
}

inline LiProblem normalized_li_problem(SeededRng& rng, int M, int K, int n_e) {
  LiProblem p;
  p.hbar_e = gaussian(M, 1, rng, 0.5).col(0);
  p.H_e = gaussian(n_e, M, rng);
  p.g_ee = gaussian(n_e, 1, rng).col(0);
  p.w = gaussian(M, K, rng);
  p.p_e = 1.0;
  p.w *= std::sqrt(rng.uniform(0.05, 0.5) * p.p_e / li_signal_power(p.H_e, p.w));
  p.p_v = p.p_e - li_signal_power(p.H_e, p.w);
  return p;
}

// hbar_k^H w_a written as h_k^H w_a + sum_n conj(g_nk) theta_n (H w_a)_n.
inline cd ce_gain(const CeProblem& p, const ComplexVector& theta, const ComplexMatrix& w, int k, int a) {
  cd acc = 0.0;
  for (int m = 0; m < p.M(); ++m) acc += std::conj(p.ch.h(m, k)) * w(m, a);
  for (int n = 0; n < p.n0(); ++n) {
    cd hw = 0.0;
    for (int m = 0; m < p.M(); ++m) hw += p.ch.H(n, m) * w(m, a);
    acc += std::conj(p.ch.G(n, k)) * theta(n) * hw;
  }
  return acc;
}

inline double ref_sinr(const CeProblem& p, const ComplexVector& theta, const ComplexMatrix& w, int k) {
  double interf = p.sigma2;
  for (int a = 0; a < p.K(); ++a)
    if (a != k) interf += std::norm(ce_gain(p, theta, w, k, a));
  for (int n = 0; n < p.n0(); ++n) interf += std::norm(p.ch.G(n, k)) * std::norm(theta(n)) * p.sigma_v2;
  return std::norm(ce_gain(p, theta, w, k, k)) / interf;
}

inline double ref_rate(const CeProblem& p, const ComplexVector& theta, const ComplexMatrix& w) {
  double r = 0.0;
  for (int k = 0; k < p.K(); ++k) r += std::log2(1.0 + ref_sinr(p, theta, w, k));
  return r;
}

inline double ref_aris_power(const CeProblem& p, const ComplexVector& theta, const ComplexMatrix& w) {
  double total = 0.0;
  for (int n = 0; n < p.n0(); ++n) {
    double out = p.sigma_v2;
    for (int k = 0; k < p.K(); ++k) {
      cd hw = 0.0;
      for (int m = 0; m < p.M(); ++m) hw += p.ch.H(n, m) * w(m, k);
      out += std::norm(hw);
    }
    total += std::norm(theta(n)) * out;
  }
  return total;
}

inline double ref_su_power(const ComplexMatrix& w) {
  double t = 0.0;
  for (int k = 0; k < w.cols(); ++k)
    for (int m = 0; m < w.rows(); ++m) t += std::norm(w(m, k));
  return t;
}

inline double ref_isr(const LiProblem& p, const ComplexVector& theta, const ComplexVector& v) {
  cd an = 0.0;
  for (int n = 0; n < p.n_e(); ++n) an += std::conj(p.g_ee(n)) * theta(n) * v(n);
  double sig = 0.0;
  for (int k = 0; k < p.w.cols(); ++k) {
    cd acc = 0.0;
    for (int m = 0; m < p.w.rows(); ++m) acc += std::conj(p.hbar_e(m)) * p.w(m, k);
    for (int n = 0; n < p.n_e(); ++n) {
      cd hw = 0.0;
      for (int m = 0; m < p.w.rows(); ++m) hw += p.H_e(n, m) * p.w(m, k);
      acc += std::conj(p.g_ee(n)) * theta(n) * hw;
    }
    sig += std::norm(acc);
  }
  return std::norm(an) / sig;
}

// Random feasible CE point: both budgets respected, random fill fraction.
inline void random_feasible_ce(const CeProblem& p, SeededRng& rng, ComplexMatrix& w, ComplexVector& theta) {
  w = gaussian(p.M(), p.K(), rng);
  w *= std::sqrt(p.p_s_max * rng.uniform() / ref_su_power(w));
  theta = gaussian(p.n0(), 1, rng).col(0);
  const double unit = ref_aris_power(p, theta, w);
  theta *= std::sqrt(p.p0 * rng.uniform() / unit);
}

// max over a `levels`-point phase grid per element of 2Re{ups^H theta} - theta^H L theta,
// by exhaustive enumeration with precomputed pairwise tables.
inline double grid_optimum(const ComplexVector& ups, const ComplexMatrix& L, int levels = 64) {
  const int n = static_cast<int>(ups.size());
  std::vector<cd> ph(static_cast<std::size_t>(levels));
  for (int a = 0; a < levels; ++a) ph[a] = std::polar(1.0, 2.0 * M_PI * a / levels);
  double diag = 0.0;
  for (int i = 0; i < n; ++i) diag += L(i, i).real();
  std::vector<std::vector<double>> lin(n, std::vector<double>(levels));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < levels; ++a) lin[i][a] = 2.0 * (std::conj(ups(i)) * ph[a]).real();
  // pair[i][j][a * levels + b] = -2 Re{conj(theta_i) L_ij theta_j}, i < j
  std::vector<std::vector<std::vector<double>>> pair(n, std::vector<std::vector<double>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pair[i][j].resize(static_cast<std::size_t>(levels * levels));
      for (int a = 0; a < levels; ++a)
        for (int b = 0; b < levels; ++b)
          pair[i][j][a * levels + b] = -2.0 * (std::conj(ph[a]) * L(i, j) * ph[b]).real();
    }
  std::vector<int> idx(n, 0);
  double best = -std::numeric_limits<double>::infinity();
  auto descend = [&](auto&& self, int depth, double partial) -> void {
    if (depth == n) {
      best = std::max(best, partial - diag);
      return;
    }
    for (int a = 0; a < levels; ++a) {
      idx[depth] = a;
      double v = partial + lin[depth][a];
      for (int i = 0; i < depth; ++i) v += pair[i][depth][idx[i] * levels + a];
      self(self, depth + 1, v);
    }
  };
  descend(descend, 0, 0.0);
  return best;
}

}  // namespace aris::test
