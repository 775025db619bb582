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


#include "aris/comm_optimizer.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "aris/errors.hpp"
#include "aris/linalg.hpp"

namespace aris {

namespace {

using cd = std::complex<double>;

// Noise power at each RU: sigma_v^2 ||g_k^H Theta||^2 + sigma^2.
Eigen::VectorXd ru_noise(const CeProblem& p, const ComplexVector& theta) {
  Eigen::VectorXd out(p.K());
  const Eigen::VectorXd amp2 = theta.cwiseAbs2();
  for (int k = 0; k < p.K(); ++k) out(k) = p.sigma_v2 * p.ch.G.col(k).cwiseAbs2().dot(amp2) + p.sigma2;
  return out;
}

// Beamformer subproblem for fixed auxiliaries: maximise
// sum_a 2Re{alpha_a^H w_a} - w_a^H B w_a subject to
// sum ||w_a||^2 <= p_s and sum w_a^H C w_a <= p_w.
struct BeamformerQp {
  ComplexMatrix B, C, alpha;
  double p_s = 0.0, p_w = 0.0;

  double surrogate(const ComplexMatrix& w) const {
    double v = 0.0;
    for (int a = 0; a < w.cols(); ++a)
      v += 2.0 * alpha.col(a).dot(w.col(a)).real() - w.col(a).dot(B * w.col(a)).real();
    return v;
  }
  double c_power(const ComplexMatrix& w) const { return (w.adjoint() * C * w).trace().real(); }
};

// w(l1) for fixed l2 via one Hermitian eigendecomposition of B + l2 C.
struct SpectralSlice {
  Eigen::MatrixXcd U;
  Eigen::VectorXd d;
  ComplexMatrix beta;
  double ridge = 0.0;

  SpectralSlice(const BeamformerQp& qp, double l2) {
    const ComplexMatrix A = qp.B + l2 * qp.C;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.info() != Eigen::Success) throw NumericalError("update_beamformer: eigendecomposition failed");
    U = es.eigenvectors();
    d = es.eigenvalues().cwiseMax(0.0);
    beta = U.adjoint() * qp.alpha;
    const double scale = A.trace().real() / static_cast<double>(A.rows());
    ridge = 1e-12 * (scale > 0.0 ? scale : 1.0);
  }
  double denom(int i, double l1) const {
    const double v = d(i) + l1;
    return v < ridge ? ridge : v;
  }
  double su_power(double l1) const {
    double s = 0.0;
    for (int i = 0; i < d.size(); ++i) s += beta.row(i).squaredNorm() / (denom(i, l1) * denom(i, l1));
    return s;
  }
  ComplexMatrix w(double l1) const {
    ComplexMatrix scaled = beta;
    for (int i = 0; i < d.size(); ++i) scaled.row(i) /= denom(i, l1);
    return U * scaled;
  }
};

// Smallest l1 >= 0 (feasible side of the final bracket) with su_power <= p_s.
double solve_l1(const SpectralSlice& sl, double p_s, const FpConfig& cfg) {
  if (sl.su_power(0.0) <= p_s) return 0.0;
  const double hi = std::sqrt(sl.beta.squaredNorm() / p_s);
  return linalg::shrink_multiplier([&](double l1) { return sl.su_power(l1); }, 0.0, hi, p_s, cfg.bisect_tol,
                                   cfg.bisect_max);
}

ComplexMatrix solve_beamformer(const BeamformerQp& qp, const FpConfig& cfg) {
  auto at = [&](double l2) {
    const SpectralSlice sl(qp, l2);
    return sl.w(solve_l1(sl, qp.p_s, cfg));
  };
  ComplexMatrix w = at(0.0);
  if (qp.c_power(w) <= qp.p_w) return w;

  // C-power with l1 re-optimised is nonincreasing in l2 (convex dual).
  const double trB = qp.B.trace().real(), trC = qp.C.trace().real();
  double hi = (trB > 0.0 && trC > 0.0) ? trB / trC : 1.0;
  double lo = 0.0;
  int grow = 0;
  for (w = at(hi); qp.c_power(w) > qp.p_w; w = at(hi)) {
    lo = hi;
    hi *= 4.0;
    if (++grow > 400) {
      std::ostringstream os;
      os << "update_beamformer: could not bracket ARIS multiplier (l2=" << hi << ", c_power=" << qp.c_power(w)
         << ", budget=" << qp.p_w << ")";
      throw NumericalError(os.str());
    }
  }
  const double l2 = linalg::shrink_multiplier([&](double x) { return qp.c_power(at(x)); }, lo, hi, qp.p_w,
                                              cfg.bisect_tol, cfg.bisect_max);
  ComplexMatrix w_hi = at(l2);
  return w_hi;
}

// theta(mu) = (diag(delta + mu psi) + V V^H)^-1 upsilon via Woodbury, followed by
// iterative refinement against the structured operator.
struct PrecoderSolver {
  const PrecoderQuadratic& q;
  explicit PrecoderSolver(const PrecoderQuadratic& quad) : q(quad) {}

  ComplexVector apply(const Eigen::VectorXd& diag, const ComplexVector& x) const {
    ComplexVector y = diag.cwiseProduct(x).cast<cd>();
    if (q.V.cols() > 0) y += q.V * (q.V.adjoint() * x);
    return y;
  }

  ComplexVector solve(double mu) const {
    const int n = static_cast<int>(q.upsilon.size());
    Eigen::VectorXd diag = q.delta + mu * q.psi;
    const double floor = 1e-300 + 1e-15 * diag.maxCoeff();
    diag = diag.cwiseMax(floor);
    const Eigen::VectorXd inv = diag.cwiseInverse();
    const int r = static_cast<int>(q.V.cols());
    Eigen::LDLT<Eigen::MatrixXcd> small;
    ComplexMatrix DinvV;
    if (r > 0) {
      DinvV = inv.cast<cd>().asDiagonal() * q.V;
      Eigen::MatrixXcd cap = Eigen::MatrixXcd::Identity(r, r) + q.V.adjoint() * DinvV;
      small.compute(cap);
    }
    auto woodbury = [&](const ComplexVector& b) {
      ComplexVector x = inv.cast<cd>().cwiseProduct(b);
      if (r > 0) x -= DinvV * small.solve(q.V.adjoint() * x);
      return x;
    };
    ComplexVector x = woodbury(q.upsilon);
    for (int it = 0; it < 2 && n > 0; ++it) {
      const ComplexVector res = q.upsilon - apply(diag, x);
      if (res.norm() <= 1e-15 * q.upsilon.norm()) break;
      x += woodbury(res);
    }
    return x;
  }

  double power(const ComplexVector& x) const { return q.psi.dot(x.cwiseAbs2()); }
};

}  // namespace

void FpConfig::validate() const {
  if (max_outer_iters <= 0 || !(rel_tol > 0.0) || !(bisect_tol > 0.0) || bisect_max <= 0)
    throw DomainError("FpConfig: all settings must be positive");
}

CeProblem make_ce_problem(const ChannelSet& ch, const Scenario& s, const PartitionPlan& plan) {
  CeProblem p;
  p.ch = ce_view(ch, plan.n0);
  p.sigma2 = s.sigma2;
  p.sigma_v2 = s.sigma_v2;
  p.p_s_max = s.p_s_max;
  p.p0 = plan.p0;
  return p;
}

ComplexMatrix effective_channels(const CeProblem& p, const ComplexVector& theta) {
  if (theta.size() != p.n0()) throw DomainError("effective_channels: theta size mismatch");
  if (p.n0() == 0) return p.ch.h;
  return p.ch.h + p.ch.H.adjoint() * (theta.conjugate().asDiagonal() * p.ch.G);
}

Eigen::VectorXd sinr_all(const CeState& st, const CeProblem& p) {
  const ComplexMatrix hbar = effective_channels(p, st.theta);
  const ComplexMatrix R = hbar.adjoint() * st.w;  // R(k, a) = hbar_k^H w_a
  const Eigen::VectorXd noise = ru_noise(p, st.theta);
  Eigen::VectorXd out(p.K());
  for (int k = 0; k < p.K(); ++k) {
    const double sig = std::norm(R(k, k));
    const double interf = R.row(k).squaredNorm() - sig;
    out(k) = sig / (std::max(interf, 0.0) + noise(k));
  }
  return out;
}

double sinr_ru(int k, const CeState& st, const CeProblem& p) {
  if (k < 0 || k >= p.K()) throw DomainError("sinr_ru: receiver index out of range");
  return sinr_all(st, p)(k);
}

double sum_rate(const CeState& st, const CeProblem& p) {
  double r = 0.0;
  for (double g : sinr_all(st, p)) r += std::log2(1.0 + g);
  return r;
}

double su_power(const ComplexMatrix& w) { return w.squaredNorm(); }

double aris_power(const CeProblem& p, const ComplexMatrix& w, const ComplexVector& theta) {
  if (p.n0() == 0) return 0.0;
  const Eigen::VectorXd load = (p.ch.H * w).rowwise().squaredNorm();
  return theta.cwiseAbs2().dot(load) + p.sigma_v2 * theta.squaredNorm();
}

double q3_value(const CeState& st, const CeProblem& p) {
  const ComplexMatrix hbar = effective_channels(p, st.theta);
  const ComplexMatrix R = hbar.adjoint() * st.w;
  const Eigen::VectorXd noise = ru_noise(p, st.theta);
  double q = 0.0;
  for (int k = 0; k < p.K(); ++k) {
    const double e = st.eps(k);
    const cd u = st.ups(k);
    q += std::log1p(e) - e + 2.0 * std::sqrt(1.0 + e) * (std::conj(u) * R(k, k)).real() -
         std::norm(u) * (R.row(k).squaredNorm() + noise(k));
  }
  return q;
}

CeAuxiliaries update_auxiliaries(const CeState& st, const CeProblem& p) {
  const ComplexMatrix hbar = effective_channels(p, st.theta);
  const ComplexMatrix R = hbar.adjoint() * st.w;
  const Eigen::VectorXd noise = ru_noise(p, st.theta);
  CeAuxiliaries aux{Eigen::VectorXd(p.K()), ComplexVector(p.K())};
  for (int k = 0; k < p.K(); ++k) {
    const double total = R.row(k).squaredNorm() + noise(k);
    const double sig = std::norm(R(k, k));
    aux.eps(k) = sig / std::max(total - sig, noise(k));
    aux.ups(k) = std::sqrt(1.0 + aux.eps(k)) * R(k, k) / total;
  }
  return aux;
}

ComplexMatrix update_beamformer(const CeState& st, const CeProblem& p, const FpConfig& cfg) {
  const double p_w = p.p0 - p.sigma_v2 * st.theta.squaredNorm();
  if (!(p_w > 0.0)) throw InfeasibleError("update_beamformer: ARIS budget exhausted by intrinsic noise", p_w);
  const ComplexMatrix hbar = effective_channels(p, st.theta);
  const int M = p.M(), K = p.K();
  BeamformerQp qp;
  qp.B = ComplexMatrix::Zero(M, M);
  qp.alpha.resize(M, K);
  for (int k = 0; k < K; ++k) {
    qp.B.noalias() += std::norm(st.ups(k)) * hbar.col(k) * hbar.col(k).adjoint();
    qp.alpha.col(k) = std::sqrt(1.0 + st.eps(k)) * st.ups(k) * hbar.col(k);
  }
  qp.C = p.n0() > 0 ? ComplexMatrix(p.ch.H.adjoint() * st.theta.cwiseAbs2().cast<cd>().asDiagonal() * p.ch.H)
                    : ComplexMatrix::Zero(M, M);
  qp.p_s = p.p_s_max;
  qp.p_w = p_w;
  ComplexMatrix w = solve_beamformer(qp, cfg);
  if (st.w.size() == w.size() && su_power(st.w) <= p.p_s_max * (1.0 + 1e-12) &&
      qp.c_power(st.w) <= p_w * (1.0 + 1e-12) && qp.surrogate(st.w) > qp.surrogate(w))
    return st.w;
  return w;
}

ComplexMatrix PrecoderQuadratic::lambda() const {
  ComplexMatrix L = V * V.adjoint();
  L.diagonal() += delta.cast<cd>();
  return L;
}

PrecoderQuadratic precoder_quadratic(const CeState& st, const CeProblem& p) {
  const int n0 = p.n0(), K = p.K();
  PrecoderQuadratic q;
  q.upsilon = ComplexVector::Zero(n0);
  q.delta = Eigen::VectorXd::Zero(n0);
  q.V.resize(n0, K * K);
  const ComplexMatrix Hw = p.ch.H * st.w;         // n0 x K
  const ComplexMatrix C = p.ch.h.adjoint() * st.w;  // C(k, a) = h_k^H w_a
  for (int k = 0; k < K; ++k) {
    const double u2 = std::norm(st.ups(k));
    const double u = std::sqrt(u2);
    const ComplexVector gk_conj = p.ch.G.col(k).conjugate();
    q.delta += p.sigma_v2 * u2 * p.ch.G.col(k).cwiseAbs2();
    for (int a = 0; a < K; ++a) {
      const ComplexVector b = gk_conj.cwiseProduct(Hw.col(a));
      q.V.col(k * K + a) = u * b.conjugate();
      q.upsilon -= u2 * C(k, a) * b.conjugate();
      if (a == k) q.upsilon += std::sqrt(1.0 + st.eps(k)) * st.ups(k) * b.conjugate();
    }
  }
  q.psi = Hw.rowwise().squaredNorm();
  q.psi.array() += p.sigma_v2;
  return q;
}

double precoder_objective(const PrecoderQuadratic& q, const ComplexVector& theta) {
  double v = 2.0 * q.upsilon.dot(theta).real() - q.delta.dot(theta.cwiseAbs2());
  if (q.V.cols() > 0) v -= (q.V.adjoint() * theta).squaredNorm();
  return v;
}

ComplexVector update_precoder(const CeState& st, const CeProblem& p, const FpConfig& cfg) {
  if (p.n0() == 0) return ComplexVector(0);
  const PrecoderQuadratic q = precoder_quadratic(st, p);
  if (q.upsilon.squaredNorm() == 0.0) return ComplexVector::Zero(p.n0());
  const PrecoderSolver solver(q);

  ComplexVector theta = solver.solve(0.0);
  if (!theta.allFinite()) throw NumericalError("update_precoder: unconstrained solve not finite");
  if (solver.power(theta) > p.p0) {
    double lo = 0.0;
    double hi = std::sqrt(q.upsilon.cwiseAbs2().cwiseQuotient(q.psi).sum() / p.p0);
    const double top = solver.power(solver.solve(hi));
    if (top > p.p0 * (1.0 + 1e-9)) {
      std::ostringstream os;
      os << "update_precoder: multiplier bound not feasible (power=" << top << ", budget=" << p.p0 << ")";
      throw NumericalError(os.str());
    }
    const double mu = linalg::shrink_multiplier([&](double x) { return solver.power(solver.solve(x)); }, lo, hi,
                                                p.p0, cfg.bisect_tol, cfg.bisect_max);
    ComplexVector t_hi = solver.solve(mu);
    theta = std::move(t_hi);
    // refinement error can leave the bracket end a hair above the budget
    const double pw = solver.power(theta);
    if (pw > p.p0) theta *= std::sqrt(p.p0 / pw);
  }
  if (st.theta.size() == theta.size() && solver.power(st.theta) <= p.p0 * (1.0 + 1e-12) &&
      precoder_objective(q, st.theta) > precoder_objective(q, theta))
    return st.theta;
  return theta;
}

CeState initial_ce_state(const CeProblem& p) {
  const int M = p.M(), K = p.K(), n0 = p.n0();
  CeState st;
  st.eps = Eigen::VectorXd::Zero(K);
  st.ups = ComplexVector::Zero(K);
  st.theta = ComplexVector::Zero(n0);
  if (n0 > 0) {
    ComplexVector probe = p.ch.h.col(0);
    const double pn = probe.norm();
    probe = pn > 0.0 ? ComplexVector(probe / pn) : ComplexVector(ComplexVector::Ones(M) / std::sqrt(double(M)));
    const ComplexVector cascade = p.ch.G.col(0).conjugate().cwiseProduct(p.ch.H * probe);
    for (int n = 0; n < n0; ++n) st.theta(n) = std::polar(1.0, -std::arg(cascade(n)));
  }
  auto matched = [&](const ComplexVector& theta) {
    const ComplexMatrix hbar = effective_channels(p, theta);
    ComplexMatrix w(M, K);
    const double amp = std::sqrt(p.p_s_max / K);
    for (int k = 0; k < K; ++k) {
      const double nk = hbar.col(k).norm();
      w.col(k) = nk > 0.0 ? ComplexVector(amp * hbar.col(k) / nk) : ComplexVector(ComplexVector::Zero(M));
    }
    return w;
  };
  auto fill = [&](const ComplexMatrix& w) {
    if (n0 == 0) return;
    const double unit = aris_power(p, w, st.theta) / st.theta.cwiseAbs2().mean();
    st.theta *= std::sqrt(0.9 * p.p0 / unit) / st.theta.cwiseAbs().mean();
  };
  // the direct-link beamformer sets the amplitude once, then the effective channel is matched
  fill(matched(ComplexVector::Zero(n0)));
  st.w = matched(st.theta);
  fill(st.w);
  const CeAuxiliaries aux = update_auxiliaries(st, p);
  st.eps = aux.eps;
  st.ups = aux.ups;
  st.q3 = q3_value(st, p);
  return st;
}

CeState optimize_ce(const CeProblem& p, const FpConfig& cfg, CeState st, std::vector<CeTraceRow>* trace) {
  cfg.validate();
  if (st.w.rows() != p.M() || st.w.cols() != p.K() || st.theta.size() != p.n0())
    throw DomainError("optimize_ce: initial state has wrong dimensions");
  double prev = -std::numeric_limits<double>::infinity();
  st.iterations = 0;
  for (int it = 0;; ++it) {
    const CeAuxiliaries aux = update_auxiliaries(st, p);
    st.eps = aux.eps;
    st.ups = aux.ups;
    st.q3 = q3_value(st, p);
    if (!std::isfinite(st.q3)) throw NumericalError("optimize_ce: objective not finite");
    if (trace) {
      const double rate = sum_rate(st, p);
      trace->push_back({it, st.q3, st.q3, rate, p.p_s_max - su_power(st.w), p.p0 - aris_power(p, st.w, st.theta)});
    }
    if (std::abs(st.q3 - prev) <= cfg.rel_tol * std::abs(st.q3) || it >= cfg.max_outer_iters) break;
    prev = st.q3;
    st.w = update_beamformer(st, p, cfg);
    st.theta = update_precoder(st, p, cfg);
    st.iterations = it + 1;
    if (trace) trace->back().q3_updated = q3_value(st, p);
  }
  return st;
}

}  // namespace aris
