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


#include "aris/baselines.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <sstream>

#include "aris/errors.hpp"
#include "aris/linalg.hpp"
#include "aris/rng.hpp"

namespace aris {

namespace {

using cd = std::complex<double>;

double rate_of(const ComplexMatrix& h, const ComplexMatrix& v, double sigma2) {
  const ComplexMatrix R = h.adjoint() * v;
  double r = 0.0;
  for (int k = 0; k < R.rows(); ++k) {
    const double sig = std::norm(R(k, k));
    r += std::log2(1.0 + sig / (R.row(k).squaredNorm() - sig + sigma2));
  }
  return r;
}

// (A + mu I)^-1 B with the smallest mu >= 0 meeting ||.||_F^2 <= p_max.
ComplexMatrix power_limited_solve(const ComplexMatrix& A, const ComplexMatrix& B, double p_max, const FpConfig& cfg) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  if (es.info() != Eigen::Success) throw NumericalError("wmmse_beamforming: eigendecomposition failed");
  const Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0);
  const ComplexMatrix beta = es.eigenvectors().adjoint() * B;
  const double scale = A.trace().real() / static_cast<double>(A.rows());
  const double ridge = 1e-12 * (scale > 0.0 ? scale : 1.0);
  auto den = [&](int i, double mu) { return std::max(d(i) + mu, ridge); };
  auto power = [&](double mu) {
    double s = 0.0;
    for (int i = 0; i < d.size(); ++i) s += beta.row(i).squaredNorm() / (den(i, mu) * den(i, mu));
    return s;
  };
  double mu = 0.0;
  if (power(0.0) > p_max) {
    const double hi = std::sqrt(beta.squaredNorm() / p_max);
    if (power(hi) > p_max) throw NumericalError("wmmse_beamforming: multiplier bracket failed");
    mu = linalg::shrink_multiplier(power, 0.0, hi, p_max, cfg.bisect_tol, cfg.bisect_max);
  }
  ComplexMatrix scaled = beta;
  for (int i = 0; i < d.size(); ++i) scaled.row(i) /= den(i, mu);
  return es.eigenvectors() * scaled;
}

}  // namespace

std::string to_string(SchemeId id) {
  switch (id) {
    case SchemeId::Adaptive: return "adaptive";
    case SchemeId::Fixed: return "fixed";
    case SchemeId::NoPartition: return "no_partition";
    case SchemeId::NoAris: return "no_aris";
  }
  return "unknown";
}

SchemeId parse_scheme(const std::string& tag) {
  for (SchemeId id : all_schemes())
    if (to_string(id) == tag) return id;
  throw DomainError("unknown scheme '" + tag + "' (expected adaptive, fixed, no_partition or no_aris)");
}

const std::vector<SchemeId>& all_schemes() {
  static const std::vector<SchemeId> ids{SchemeId::Adaptive, SchemeId::Fixed, SchemeId::NoPartition, SchemeId::NoAris};
  return ids;
}

namespace {

ComplexMatrix wmmse_from(const ComplexMatrix& h, ComplexMatrix v, double sigma2, double p_max, const FpConfig& cfg,
                         std::vector<WmmseTraceRow>& trace) {
  const int M = static_cast<int>(h.rows()), K = static_cast<int>(h.cols());
  double prev = rate_of(h, v, sigma2);
  trace.push_back({0, prev});
  for (int it = 1; it <= cfg.max_outer_iters; ++it) {
    const ComplexMatrix R = h.adjoint() * v;
    ComplexMatrix A = ComplexMatrix::Zero(M, M);
    ComplexMatrix B(M, K);
    for (int k = 0; k < K; ++k) {
      const double total = R.row(k).squaredNorm() + sigma2;
      const cd u = R(k, k) / total;
      const double mse = std::max(1.0 - (std::conj(u) * R(k, k)).real(), 1e-300);
      const double weight = 1.0 / mse;
      A.noalias() += weight * std::norm(u) * h.col(k) * h.col(k).adjoint();
      B.col(k) = weight * u * h.col(k);
    }
    v = power_limited_solve(A, B, p_max, cfg);
    const double rate = rate_of(h, v, sigma2);
    trace.push_back({it, rate});
    const bool done = std::abs(rate - prev) <= cfg.rel_tol * std::abs(rate);
    prev = rate;
    if (done) break;
  }
  return v;
}

}  // namespace

ComplexMatrix wmmse_beamforming(const CeChannels& direct, double sigma2, double p_max, const FpConfig& cfg,
                                std::vector<WmmseTraceRow>* trace) {
  cfg.validate();
  const ComplexMatrix& h = direct.h;
  const int M = static_cast<int>(h.rows()), K = static_cast<int>(h.cols());
  if (K < 1) throw DomainError("wmmse_beamforming: at least one receiver required");
  if (!(p_max > 0.0)) throw DomainError("wmmse_beamforming: power budget must be > 0");
  // matched filter with an equal split
  ComplexMatrix mrt(M, K);
  for (int k = 0; k < K; ++k) {
    const double n = h.col(k).norm();
    mrt.col(k) = n > 0.0 ? ComplexVector(h.col(k) / n * std::sqrt(p_max / K)) : ComplexVector(ComplexVector::Zero(M));
  }
  // regularised zero forcing at full power
  ComplexMatrix rzf = h * (h.adjoint() * h + (K * sigma2 / p_max) * ComplexMatrix::Identity(K, K)).inverse();
  const double rzf_power = rzf.squaredNorm();
  if (rzf_power > 0.0 && std::isfinite(rzf_power)) rzf *= std::sqrt(p_max / rzf_power);
  else rzf = mrt;

  std::vector<ComplexMatrix> starts{mrt, rzf};
  // one receiver at full power; the loop keeps the others switched off
  for (int k = 0; k < K; ++k) {
    const double n = h.col(k).norm();
    if (!(n > 0.0)) continue;
    ComplexMatrix single = ComplexMatrix::Zero(M, K);
    single.col(k) = h.col(k) / n * std::sqrt(p_max);
    starts.push_back(std::move(single));
  }
  ComplexMatrix best;
  std::vector<WmmseTraceRow> best_trace;
  for (const auto& start : starts) {
    std::vector<WmmseTraceRow> t;
    ComplexMatrix v = wmmse_from(h, start, sigma2, p_max, cfg, t);
    if (best_trace.empty() || t.back().sum_rate > best_trace.back().sum_rate) {
      best = std::move(v);
      best_trace = std::move(t);
    }
  }
  if (trace) *trace = std::move(best_trace);
  return best;
}

SchemeOutcome run_scheme(SchemeId id, const Scenario& s, const DistanceSet& d, const ChannelSet& ch,
                         const SchemeOptions& opt) {
  SchemeOutcome out;
  out.id = id;
  const auto E = static_cast<std::size_t>(s.E);
  out.li.assign(E, std::nullopt);
  out.an_budget.assign(E, 0.0);

  if (id == SchemeId::NoAris) {
    out.plan.rho0 = 0.0;
    out.plan.eta0 = 0.0;
    out.plan.n0 = 0;
    out.plan.n_e.assign(E, 0);
    out.plan.rho_e.assign(E, 0.0);
    out.plan.eta_e.assign(E, 0.0);
    out.plan.p_e.assign(E, 0.0);
    std::vector<WmmseTraceRow> trace;
    out.ce.w = wmmse_beamforming(direct_only(ch), s.sigma2, s.p_s_max, opt.fp, &trace);
    out.ce.theta = ComplexVector(0);
    out.ce.eps = Eigen::VectorXd::Zero(s.K);
    out.ce.ups = ComplexVector::Zero(s.K);
    out.iterations = static_cast<int>(trace.size()) - 1;
    out.ce.iterations = out.iterations;
    return out;
  }

  switch (id) {
    case SchemeId::Adaptive: out.plan = adaptive_plan(s, d); break;
    case SchemeId::Fixed: out.plan = fixed_plan(s); break;
    default: out.plan = no_partition_plan(s); break;
  }
  const CeProblem p = make_ce_problem(ch, s, out.plan);
  out.ce = optimize_ce(p, opt.fp, initial_ce_state(p));
  out.iterations = out.ce.iterations;
  if (id == SchemeId::NoPartition) return out;

  for (std::size_t e = 0; e < E; ++e) {
    if (out.plan.n_e[e] < 1) continue;
    LiProblem lp = make_li_problem(ch, out.plan, static_cast<int>(e), out.ce);
    if (!(lp.p_v > opt.min_an_power)) {
      std::ostringstream os;
      os << "MU " << e << ": AN budget " << lp.p_v << " W clamped to " << opt.min_an_power << " W";
      out.warnings.push_back(os.str());
      lp.p_v = opt.min_an_power;
    }
    LiConfig cfg = opt.li;
    cfg.seed = derive_seed(opt.li.seed, {static_cast<std::uint64_t>(e)});
    out.li[e] = optimize_li(lp, opt.fp, cfg, initial_li_state(lp));
    out.an_budget[e] = lp.p_v;
  }
  return out;
}

SystemMetrics evaluate_metrics(const SchemeOutcome& out, const Scenario& s, const ChannelSet& ch, bool misaligned) {
  SystemMetrics m;
  const int E = s.E, K = s.K;
  m.isr.assign(static_cast<std::size_t>(E), 0.0);
  const bool aris = out.id != SchemeId::NoAris;
  const CeProblem p = aris ? make_ce_problem(ch, s, out.plan)
                           : CeProblem{direct_only(ch), s.sigma2, s.sigma_v2, s.p_s_max, 0.0};

  if (!misaligned || !aris) {
    m.sinr = sinr_all(out.ce, p);
    m.sum_rate = sum_rate(out.ce, p);
    for (int e = 0; e < E; ++e) {
      const auto& li = out.li[static_cast<std::size_t>(e)];
      if (!li) continue;
      const LiProblem lp = make_li_problem(ch, out.plan, e, out.ce);
      m.isr[static_cast<std::size_t>(e)] = isr_mu(*li, lp);
    }
  } else {
    // every partition's signal path and AN reaches every receiver
    const ComplexMatrix& w = out.ce.w;
    auto through = [&](const ComplexVector& g_full, ComplexVector& eff, double& an) {
      const int n0 = out.plan.n0;
      if (n0 > 0) eff += ch.H.topRows(n0).adjoint() * out.ce.theta.conjugate().cwiseProduct(g_full.head(n0));
      an = 0.0;
      for (int i = 0; i < E; ++i) {
        const auto& li = out.li[static_cast<std::size_t>(i)];
        if (!li) continue;
        const int off = out.plan.li_offset(i), n = out.plan.n_e[static_cast<std::size_t>(i)];
        const ComplexVector g = g_full.segment(off, n);
        eff += ch.H.middleRows(off, n).adjoint() * li->theta.conjugate().cwiseProduct(g);
        an += std::norm(g.dot(li->theta.cwiseProduct(li->v)));
      }
    };
    m.sinr.resize(K);
    m.sum_rate = 0.0;
    for (int k = 0; k < K; ++k) {
      ComplexVector eff = ch.h_ru.col(k);
      double an = 0.0;
      through(ch.g_ru.col(k), eff, an);
      const Eigen::RowVectorXcd r = eff.adjoint() * w;
      const int n0 = out.plan.n0;
      const double noise = s.sigma2 + an +
                           s.sigma_v2 * ch.g_ru.col(k).head(n0).cwiseAbs2().dot(out.ce.theta.cwiseAbs2());
      const double sig = std::norm(r(k));
      m.sinr(k) = sig / (r.squaredNorm() - sig + noise);
      m.sum_rate += std::log2(1.0 + m.sinr(k));
    }
    for (int e = 0; e < E; ++e) {
      ComplexVector eff = ch.h_mu.col(e);
      double an = 0.0;
      through(ch.g_mu.col(e), eff, an);
      const double den = (eff.adjoint() * w).squaredNorm();
      if (!(den > 0.0)) throw DomainError("evaluate_metrics: no signal power reaches MU");
      m.isr[static_cast<std::size_t>(e)] = an / den;
    }
  }
  double acc = 0.0;
  for (double v : m.isr) acc += v;
  m.mean_isr = E > 0 ? acc / E : 0.0;
  return m;
}

RssTruth rss_truth(const SchemeOutcome& out) {
  RssTruth t;
  t.p_s = su_power(out.ce.w);
  t.ce_gain = out.ce.theta.squaredNorm();
  t.n_e = out.plan.n_e;
  t.aris_present = out.id != SchemeId::NoAris;
  for (const auto& li : out.li) t.an_power.push_back(li ? li->v.squaredNorm() : 0.0);
  return t;
}

}  // namespace aris
