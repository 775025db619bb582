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


#include "aris/localization.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "aris/errors.hpp"
#include "aris/units.hpp"

namespace aris {

namespace {

double e_db(const PathLossModel& loss) { return 10.0 * loss.exponent / std::log(10.0); }

}  // namespace

double combine_db(double p_d, double p_r, double p_n) {
  const double m = std::max({p_d, p_r, p_n});
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double v : {p_d, p_r, p_n})
    if (v != kNegInf) s += std::pow(10.0, (v - m) / 10.0);
  return m + 10.0 * std::log10(s);
}

RssTruth rss_truth_from_plan(const Scenario& s, const DistanceSet& d, const PartitionPlan& plan,
                             const Eigen::VectorXd& ce_amplitudes, double min_an_power, int* clamped) {
  RssTruth t;
  t.p_s = s.p_s_max;
  t.ce_gain = ce_amplitudes.squaredNorm();
  t.n_e = plan.n_e;
  const double l_H = path_loss(d.d_H, s.loss);
  int n_clamped = 0;
  for (std::size_t e = 0; e < plan.n_e.size(); ++e) {
    if (plan.n_e[e] == 0 || plan.p_e[e] <= 0.0) {
      t.an_power.push_back(0.0);
      continue;
    }
    double pv = plan.p_e[e] - plan.n_e[e] * s.p_s_max * l_H;
    if (pv < min_an_power) {
      pv = min_an_power;
      ++n_clamped;
    }
    t.an_power.push_back(pv);
  }
  if (clamped) *clamped = n_clamped;
  return t;
}

RssComponents rss_components(int e, const Scenario& s, const DistanceSet& d, const RssTruth& t) {
  const auto i = static_cast<std::size_t>(e);
  if (e < 0 || i >= d.d_h.size()) throw DomainError("rss_components: MU index out of range");
  RssComponents c;
  const double ps = t.p_s > 0.0 ? watts_to_dbm(t.p_s) : kNegInf;
  c.p_d = ps + path_loss_db(d.d_h[i], s.loss);
  if (t.aris_present) {
    const double gain = t.ce_gain + (i < t.n_e.size() ? t.n_e[i] : 0);
    if (gain > 0.0)
      c.p_r = ps + path_loss_db(d.d_g[i], s.loss) + path_loss_db(d.d_H, s.loss) + linear_to_db(gain);
  }
  const double pv = i < t.an_power.size() ? t.an_power[i] : 0.0;
  if (pv < 0.0) throw InfeasibleError("rss_components: negative AN power", pv);
  if (pv > 0.0) c.p_n = watts_to_dbm(pv) + path_loss_db(d.d_g[i], s.loss);
  c.c = combine_db(c.p_d, c.p_r, c.p_n);
  return c;
}

RssComponents rss_components(int e, const Scenario& s, const PartitionPlan& plan, const Eigen::VectorXd& ce_amplitudes) {
  const DistanceSet d = distances(s);
  return rss_components(e, s, d, rss_truth_from_plan(s, d, plan, ce_amplitudes));
}

IsrExpectation expected_isr(const RssComponents& c) {
  const double m = std::max(c.p_d, c.p_r);
  if (c.p_n == kNegInf) return {0.0, 1.0};
  if (m == kNegInf) return {std::numeric_limits<double>::infinity(), 0.0};
  // shift by the larger signal term so neither power under- nor overflows
  double sig = 0.0;
  for (double v : {c.p_d, c.p_r})
    if (v != kNegInf) sig += std::pow(10.0, (v - m) / 10.0);
  const double varrho = std::pow(10.0, (c.p_n - m) / 10.0) / sig;
  return {varrho, 1.0 / (1.0 + varrho)};
}

Eigen::VectorXd sample_observations(const Eigen::VectorXd& means, double sigma_db, SeededRng& rng) {
  if (!(sigma_db >= 0.0)) throw DomainError("sample_observations: sigma_db must be >= 0");
  Eigen::VectorXd r(means.size());
  for (Eigen::Index e = 0; e < means.size(); ++e) r(e) = means(e) + sigma_db * rng.normal();
  return r;
}

Eigen::VectorXd AdversaryModel::to_vector(const ParamVector& p) const {
  Eigen::VectorXd v(n_params());
  v(0) = p.x;
  v(1) = p.y;
  v(2) = p.z;
  if (reflected) {
    v(3) = p.g_r;
    v(4) = p.p_s;
  } else {
    v(3) = p.p_s;
  }
  return v;
}

ParamVector AdversaryModel::from_vector(const Eigen::VectorXd& v) const {
  ParamVector p;
  p.x = v(0);
  p.y = v(1);
  p.z = v(2);
  if (reflected) {
    p.g_r = v(3);
    p.p_s = v(4);
  } else {
    p.p_s = v(3);
  }
  return p;
}

double AdversaryModel::predict(int e, const ParamVector& p) const {
  const Position& mu = mu_pos[static_cast<std::size_t>(e)];
  const Position src = p.position();
  const double p_d = p.p_s + path_loss_db((mu - src).norm(), loss);
  double p_r = kNegInf;
  if (reflected)
    p_r = p.p_s + path_loss_db((mu - aris_pos).norm(), loss) + path_loss_db((aris_pos - src).norm(), loss) + p.g_r;
  return combine_db(p_d, p_r, p_n[static_cast<std::size_t>(e)]);
}

Eigen::VectorXd AdversaryModel::predict_all(const ParamVector& p) const {
  Eigen::VectorXd c(E());
  for (int e = 0; e < E(); ++e) c(e) = predict(e, p);
  return c;
}

Eigen::VectorXd AdversaryModel::gradient(int e, const ParamVector& p) const {
  const Position& mu = mu_pos[static_cast<std::size_t>(e)];
  const Position src = p.position();
  const double d_h = (mu - src).norm();
  const double d_H = (aris_pos - src).norm();
  const double k = e_db(loss);
  const double p_d = p.p_s + path_loss_db(d_h, loss);
  const double p_r =
      reflected ? p.p_s + path_loss_db((mu - aris_pos).norm(), loss) + path_loss_db(d_H, loss) + p.g_r : kNegInf;
  const double pn = p_n[static_cast<std::size_t>(e)];
  const double m = std::max({p_d, p_r, pn});
  const double wd = std::pow(10.0, (p_d - m) / 10.0);
  const double wr = p_r == kNegInf ? 0.0 : std::pow(10.0, (p_r - m) / 10.0);
  const double wn = pn == kNegInf ? 0.0 : std::pow(10.0, (pn - m) / 10.0);
  const double beta = wd + wr + wn;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n_params());
  Eigen::Vector3d pos = (wd / beta) * k / (d_h * d_h) * (mu - src);
  if (reflected) pos += (wr / beta) * k / (d_H * d_H) * (aris_pos - src);
  g.head<3>() = pos;
  if (reflected) {
    g(3) = wr / beta;
    g(4) = (wd + wr) / beta;
  } else {
    g(3) = wd / beta;
  }
  return g;
}

AdversaryModel make_adversary(const Scenario& s, const std::vector<RssComponents>& comps, bool aris_present) {
  AdversaryModel m;
  m.mu_pos = s.mu_pos;
  m.aris_pos = s.aris_pos;
  m.loss = s.loss;
  for (const auto& c : comps) m.p_n.push_back(c.p_n);
  m.reflected = aris_present;
  if (m.p_n.size() != m.mu_pos.size()) throw DomainError("make_adversary: one RSS component per MU required");
  return m;
}

void MleSearch::validate() const {
  if (!(half_width >= 0.0) || !(pitch > 0.0) || !(g_r_step > 0.0) || !(p_s_step > 0.0) || g_r_hi < g_r_lo ||
      p_s_hi < p_s_lo || gn_max_iter < 0 || !(gn_step_tol > 0.0))
    throw DomainError("MleSearch: invalid grid or refinement settings");
}

SearchGrid make_grid(const AdversaryModel& m, const MleSearch& cfg) {
  cfg.validate();
  Position centre = Position::Zero();
  for (const auto& p : m.mu_pos) centre += p;
  if (!m.mu_pos.empty()) centre /= static_cast<double>(m.mu_pos.size());
  auto axis = [](double lo, double hi, double step) {
    std::vector<double> v;
    const auto n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) v.push_back(lo + i * step);
    return v;
  };
  SearchGrid g;
  const auto n = static_cast<int>(std::floor(cfg.half_width / cfg.pitch + 1e-9));
  for (int i = -n; i <= n; ++i) {
    g.xs.push_back(centre.x() + i * cfg.pitch);
    g.ys.push_back(centre.y() + i * cfg.pitch);
    g.zs.push_back(centre.z() + i * cfg.pitch);
  }
  g.g_r = m.reflected ? axis(cfg.g_r_lo, cfg.g_r_hi, cfg.g_r_step) : std::vector<double>{0.0};
  g.p_s = axis(cfg.p_s_lo, cfg.p_s_hi, cfg.p_s_step);
  return g;
}

double mle_cost(const Eigen::VectorXd& r, const AdversaryModel& m, const ParamVector& p) {
  return (r - m.predict_all(p)).squaredNorm();
}

MleResult mle_estimate(const Eigen::VectorXd& r, const AdversaryModel& m, const MleSearch& cfg) {
  const int n = m.n_params();
  if (m.E() < n) throw UnidentifiableError("mle_estimate: fewer observations than unknown parameters");
  if (r.size() != m.E()) throw DomainError("mle_estimate: observation count does not match the model");
  const SearchGrid grid = make_grid(m, cfg);
  const GridBest best = cfg.parallel ? grid_search_parallel(r, m, grid) : grid_search_serial(r, m, grid);

  MleResult res;
  res.grid_point = best.param;
  // refinement stays inside the bounding box of the search grid
  Eigen::VectorXd lo = m.to_vector({grid.xs.front(), grid.ys.front(), grid.zs.front(), grid.g_r.front(), grid.p_s.front()});
  Eigen::VectorXd hi = m.to_vector({grid.xs.back(), grid.ys.back(), grid.zs.back(), grid.g_r.back(), grid.p_s.back()});
  auto project = [&](const Eigen::VectorXd& v) { return v.cwiseMax(lo).cwiseMin(hi).eval(); };
  Eigen::VectorXd x = m.to_vector(best.param);
  double cost = best.cost;
  for (int it = 0; it < cfg.gn_max_iter; ++it) {
    const ParamVector cur = m.from_vector(x);
    Eigen::MatrixXd J(m.E(), n);
    for (int e = 0; e < m.E(); ++e) J.row(e) = m.gradient(e, cur).transpose();
    const Eigen::VectorXd resid = r - m.predict_all(cur);
    Eigen::MatrixXd A = J.transpose() * J;
    A.diagonal().array() += 1e-12 * A.trace() / n;
    const Eigen::VectorXd step = A.ldlt().solve(J.transpose() * resid);
    if (!step.allFinite()) break;
    double t = 1.0;
    double moved = 0.0;
    for (int h = 0; h < 40; ++h, t *= 0.5) {
      const Eigen::VectorXd cand = project(x + t * step);
      const double c = mle_cost(r, m, m.from_vector(cand));
      if (std::isfinite(c) && c < cost) {
        moved = (cand - x).norm();
        x = cand;
        cost = c;
        break;
      }
    }
    res.iterations = it + 1;
    if (moved < cfg.gn_step_tol) break;
  }
  res.estimate = m.from_vector(x);
  res.cost = cost;
  if (!x.allFinite() || !std::isfinite(cost) || cost > best.cost) {
    res.estimate = best.param;
    res.cost = best.cost;
    res.refined = false;
  }
  return res;
}

FimReport fim_crlb(const Scenario& s, const std::vector<RssComponents>& comps, bool aris_present) {
  const int E = static_cast<int>(comps.size());
  if (E < 1) throw DomainError("fim_crlb: at least one receiver required");
  if (static_cast<int>(s.mu_pos.size()) != E) throw DomainError("fim_crlb: one RSS component per MU required");
  if (!(s.sigma_db > 0.0)) throw DomainError("fim_crlb: sigma_db must be > 0");
  const int n = aris_present ? 5 : 4;
  const double k = e_db(s.loss);
  const Position src = s.su_pos;
  const Position to_aris = s.aris_pos - src;
  const double d_H = to_aris.norm();
  FimReport rep;
  rep.j = Eigen::MatrixXd::Zero(n, n);
  for (int e = 0; e < E; ++e) {
    const RssComponents& c = comps[static_cast<std::size_t>(e)];
    const Position to_mu = s.mu_pos[static_cast<std::size_t>(e)] - src;
    const double d_h = to_mu.norm();
    const IsrExpectation isr = expected_isr(c);
    double alpha = 0.0;
    if (aris_present && c.p_r != kNegInf) {
      const double m = std::max(c.p_d, c.p_r);
      const double wd = std::pow(10.0, (c.p_d - m) / 10.0), wr = std::pow(10.0, (c.p_r - m) / 10.0);
      alpha = wr / (wd + wr);
    }
    Eigen::VectorXd v(n);
    v.head<3>() = k * ((1.0 - alpha) / d_h * (to_mu / d_h) + alpha / d_H * (to_aris / d_H));
    if (aris_present) {
      v(3) = alpha;
      v(4) = 1.0;
    } else {
      v(3) = 1.0;
    }
    rep.j += isr.alpha0 * isr.alpha0 * v * v.transpose();
    rep.grad_vecs.push_back(v);
    rep.alpha0.push_back(isr.alpha0);
    rep.alpha.push_back(alpha);
    rep.varrho.push_back(isr.varrho);
  }
  rep.j /= s.sigma_db * s.sigma_db;
  rep.j = 0.5 * (rep.j + rep.j.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rep.j);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  int rank = 0;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 1e-11 * top) ++rank;
  if (!(top > 0.0) || rank < n) throw SingularError("fim_crlb: Fisher information is singular", rank);
  const Eigen::MatrixXd inv = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  rep.crlb_block = inv.topLeftCorner<3, 3>();
  rep.rmse_bound = std::sqrt(rep.crlb_block.trace());
  return rep;
}

}  // namespace aris
