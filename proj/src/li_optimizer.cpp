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


#include "aris/li_optimizer.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>

#include "aris/errors.hpp"

namespace aris {

namespace {

using cd = std::complex<double>;

// Per-stream response at the MU: (hbar + H_e^H (conj(theta) .* g))^H w.
Eigen::RowVectorXcd mu_response(const LiState& li, const LiProblem& p) {
  ComplexVector eff = p.hbar_e;
  if (p.n_e() > 0) eff += p.H_e.adjoint() * li.theta.conjugate().cwiseProduct(p.g_ee);
  return eff.adjoint() * p.w;
}

cd an_amplitude(const LiState& li, const LiProblem& p) {
  if (p.n_e() == 0) return {0.0, 0.0};
  return p.g_ee.dot(li.theta.cwiseProduct(li.v));  // sum conj(g_n) theta_n v_n
}

}  // namespace

double li_signal_power(const ComplexMatrix& H_e, const ComplexMatrix& w) {
  if (H_e.rows() == 0) return 0.0;
  return (H_e * w).squaredNorm();
}

LiProblem make_li_problem(const ChannelSet& ch, const PartitionPlan& plan, int e, const CeState& ce) {
  const auto idx = static_cast<std::size_t>(e);
  if (e < 0 || idx >= plan.n_e.size()) throw DomainError("make_li_problem: MU index out of range");
  const LiChannels lv = li_view(ch, e, plan.n0, plan.li_offset(e), plan.n_e[idx]);
  LiProblem p;
  p.hbar_e = lv.h_e;
  if (plan.n0 > 0) p.hbar_e += lv.H_ce.adjoint() * ce.theta.conjugate().cwiseProduct(lv.g_e0);
  p.H_e = lv.H_e;
  p.g_ee = lv.g_ee;
  p.w = ce.w;
  p.p_e = plan.p_e[idx];
  p.p_v = p.p_e - li_signal_power(p.H_e, p.w);
  return p;
}

double isr_mu(const LiState& li, const LiProblem& p) {
  const double den = mu_response(li, p).squaredNorm();
  if (!(den > 0.0)) throw DomainError("isr_mu: no signal power reaches the receiver");
  return std::norm(an_amplitude(li, p)) / den;
}

std::complex<double> update_xi(const LiState& li, const LiProblem& p) {
  const double den = mu_response(li, p).squaredNorm();
  if (!(den > 0.0)) throw DomainError("update_xi: no signal power reaches the receiver");
  return an_amplitude(li, p) / den;
}

double q4_value(const LiState& li, const LiProblem& p) {
  return 2.0 * (std::conj(li.xi) * an_amplitude(li, p)).real() - std::norm(li.xi) * mu_response(li, p).squaredNorm();
}

ComplexVector update_an(const LiState& li, const LiProblem& p) {
  if (!(p.p_v > 0.0)) throw InfeasibleError("update_an: AN budget exhausted by pass-through signal", p.p_v);
  const int n = p.n_e();
  ComplexVector dir = p.g_ee.cwiseProduct(li.theta.conjugate());
  const double nrm = dir.norm();
  if (!(nrm > 0.0)) {
    dir = ComplexVector::Ones(n) / std::sqrt(static_cast<double>(n));
  } else {
    dir /= nrm;
  }
  const cd phase = std::abs(li.xi) > 0.0 ? li.xi / std::abs(li.xi) : cd(1.0, 0.0);
  return std::sqrt(p.p_v) * phase * dir;
}

ComplexVector update_an_eigen(const LiState& li, const LiProblem& p) {
  if (!(p.p_v > 0.0)) throw InfeasibleError("update_an_eigen: AN budget exhausted", p.p_v);
  const ComplexVector a = li.theta.conjugate().cwiseProduct(p.g_ee);  // Theta^H g
  const ComplexMatrix B = a * a.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
  ComplexVector u = es.eigenvectors().col(B.rows() - 1);
  const cd proj = a.dot(u);  // g^H Theta u
  const cd target = std::abs(li.xi) > 0.0 ? li.xi / std::abs(li.xi) : cd(1.0, 0.0);
  if (std::abs(proj) > 0.0) u *= target * std::conj(proj) / std::abs(proj);
  return std::sqrt(p.p_v) * u;
}

ComplexMatrix HomogenizedProblem::d_matrix() const {
  const int N = n();
  ComplexMatrix D = ComplexMatrix::Zero(N + 1, N + 1);
  D.topLeftCorner(N, N) = -(W * W.adjoint());
  D.topRightCorner(N, 1) = upsilon;
  D.bottomLeftCorner(1, N) = upsilon.adjoint();
  return D;
}

double HomogenizedProblem::objective(const ComplexVector& theta) const {
  double v = 2.0 * upsilon.dot(theta).real();
  if (W.cols() > 0) v -= (W.adjoint() * theta).squaredNorm();
  return v;
}

double HomogenizedProblem::lifted_objective(const ComplexVector& z) const {
  const int N = n();
  const ComplexVector th = z.head(N);
  const cd t = z(N);
  double v = 2.0 * (std::conj(t) * upsilon.dot(th)).real();
  if (W.cols() > 0) v -= (W.adjoint() * th).squaredNorm();
  return v;
}

HomogenizedProblem li_quadratic(const LiState& li, const LiProblem& p) {
  const int n = p.n_e(), K = static_cast<int>(p.w.cols());
  HomogenizedProblem hp;
  const ComplexMatrix Hw = p.H_e * p.w;                     // n x K
  const Eigen::RowVectorXcd c = p.hbar_e.adjoint() * p.w;   // c_k = hbar^H w_k
  const double xi_abs = std::abs(li.xi);
  hp.W.resize(n, K);
  hp.upsilon = ComplexVector::Zero(n);
  for (int k = 0; k < K; ++k) {
    const ComplexVector bk_conj = p.g_ee.cwiseProduct(Hw.col(k).conjugate());  // conj(b_k)
    hp.W.col(k) = xi_abs * bk_conj;
    hp.upsilon -= std::norm(li.xi) * c(k) * bk_conj;
  }
  return hp;
}

ComplexVector coordinate_ascent(const HomogenizedProblem& hp, const ComplexVector& start, const LiConfig& cfg) {
  const int N = hp.n();
  if (start.size() != N) throw DomainError("coordinate_ascent: start has wrong size");
  ComplexVector th(N);
  for (int n = 0; n < N; ++n) th(n) = std::abs(start(n)) > 0.0 ? start(n) / std::abs(start(n)) : cd(1.0, 0.0);
  cd t(1.0, 0.0);
  const Eigen::VectorXd diag = hp.W.rowwise().squaredNorm();
  Eigen::VectorXcd y = hp.W.adjoint() * th;  // W^H theta
  auto value = [&] { return 2.0 * (std::conj(t) * hp.upsilon.dot(th)).real() - y.squaredNorm(); };
  double f = value();
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    for (int n = 0; n < N; ++n) {
      const cd lam_theta = hp.W.row(n).transpose().cwiseProduct(y).sum();  // (Lambda theta)_n
      const cd r = -lam_theta + diag(n) * th(n) + hp.upsilon(n) * t;
      const double mag = std::abs(r);
      if (!(mag > 0.0)) continue;
      const cd next = r / mag;
      const cd delta = next - th(n);
      if (delta == cd(0.0, 0.0)) continue;
      y += hp.W.row(n).adjoint() * delta;
      th(n) = next;
    }
    const cd rt = hp.upsilon.dot(th);
    if (std::abs(rt) > 0.0) t = rt / std::abs(rt);
    const double g = value();
    const double gain = g - f;
    f = g;
    if (gain <= cfg.sweep_tol * std::max(std::abs(f), std::numeric_limits<double>::min())) break;
    // keep y from drifting over long runs
    if (sweep % 32 == 31) y = hp.W.adjoint() * th;
  }
  return th / t;
}

ComplexVector update_precoder_li(const LiState& li, const LiProblem& p, const LiConfig& cfg) {
  const int N = p.n_e();
  if (N == 0) return ComplexVector(0);
  const HomogenizedProblem hp = li_quadratic(li, p);
  ComplexVector best = li.theta;
  double best_val = hp.objective(best);
  auto consider = [&](const ComplexVector& start) {
    ComplexVector cand = coordinate_ascent(hp, start, cfg);
    const double v = hp.objective(cand);
    if (v > best_val) {
      best_val = v;
      best = std::move(cand);
    }
  };
  consider(li.theta);
  ComplexVector aligned(N);
  for (int n = 0; n < N; ++n) aligned(n) = std::polar(1.0, std::arg(hp.upsilon(n)));
  consider(aligned);
  SeededRng rng(cfg.seed);
  for (int r = 0; r < cfg.random_restarts; ++r) {
    ComplexVector start(N);
    for (int n = 0; n < N; ++n) start(n) = std::polar(1.0, rng.uniform(-M_PI, M_PI));
    consider(start);
  }
  return best;
}

LiState initial_li_state(const LiProblem& p) {
  LiState li;
  li.theta = ComplexVector::Ones(p.n_e());
  li.v = ComplexVector::Zero(p.n_e());
  if (p.n_e() > 0) li.v = update_an(li, p);
  li.xi = update_xi(li, p);
  li.q4 = q4_value(li, p);
  return li;
}

LiState optimize_li(const LiProblem& p, const FpConfig& cfg, const LiConfig& li_cfg, LiState li,
                    std::vector<LiTraceRow>* trace) {
  cfg.validate();
  if (p.n_e() < 1) throw DomainError("optimize_li: empty interference partition");
  if (li.theta.size() != p.n_e() || li.v.size() != p.n_e())
    throw DomainError("optimize_li: initial state has wrong dimensions");
  double prev = -std::numeric_limits<double>::infinity();
  li.iterations = 0;
  const double sig = li_signal_power(p.H_e, p.w);
  for (int it = 0;; ++it) {
    li.xi = update_xi(li, p);
    li.q4 = q4_value(li, p);
    if (trace) trace->push_back({it, li.q4, isr_mu(li, p), p.p_e - sig - li.v.squaredNorm()});
    if (std::abs(li.q4 - prev) <= cfg.rel_tol * std::abs(li.q4) || it >= cfg.max_outer_iters) break;
    prev = li.q4;
    li.v = update_an(li, p);
    const ComplexVector emitted = li.theta.cwiseProduct(li.v);
    li.theta = update_precoder_li(li, p, li_cfg);
    li.v = li.theta.conjugate().cwiseProduct(emitted);
    li.iterations = it + 1;
  }
  return li;
}

}  // namespace aris
