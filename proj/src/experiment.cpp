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


#include "aris/experiment.hpp"

#include <cmath>
#include <limits>

#include "aris/errors.hpp"
#include "aris/rng.hpp"

namespace aris {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool usable(const ResultRow& r) { return r.status == "ok" || r.status == "clamped"; }

}  // namespace

SchemeOptions sweep_options() {
  SchemeOptions o;
  o.fp.max_outer_iters = 60;
  o.fp.rel_tol = 1e-5;
  return o;
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::DSe: return "d_se";
    case SweepVariable::PRMax: return "p_r_max";
    case SweepVariable::NT: return "n_t";
    case SweepVariable::ECount: return "e_count";
    case SweepVariable::Omega: return "omega";
  }
  return "unknown";
}

SweepVariable parse_sweep(const std::string& tag) {
  for (SweepVariable v : {SweepVariable::DSe, SweepVariable::PRMax, SweepVariable::NT, SweepVariable::ECount,
                          SweepVariable::Omega})
    if (to_string(v) == tag) return v;
  throw DomainError("unknown sweep variable '" + tag + "' (expected d_se, p_r_max, n_t, e_count or omega)");
}

Scenario apply_sweep(const Scenario& base, SweepVariable v, double value) {
  if (!std::isfinite(value)) throw DomainError("apply_sweep: sweep value must be finite");
  Scenario s = base;
  auto count = [&](const char* what) {
    const double r = std::round(value);
    if (std::abs(r - value) > 1e-9 || r < 0) throw DomainError(std::string("apply_sweep: ") + what + " must be a count");
    return static_cast<int>(r);
  };
  switch (v) {
    case SweepVariable::DSe: s.mu_distance = value; break;
    case SweepVariable::PRMax:
      s.p_r_max = value;
      s.p_s_max = value / 2.0;
      break;
    case SweepVariable::NT: s.n_t = count("n_t"); break;
    case SweepVariable::ECount:
      s.E = count("e_count");
      s.mu_pos.clear();
      break;
    case SweepVariable::Omega: s.omega = value; break;
  }
  s.validate();
  return s;
}

void ExperimentSpec::validate() const {
  if (sweep_values.empty()) throw DomainError("ExperimentSpec: sweep_values is empty");
  if (trials < 1) throw DomainError("ExperimentSpec: trials must be >= 1");
  if (schemes.empty()) throw DomainError("ExperimentSpec: no schemes selected");
  options.fp.validate();
  mle.validate();
  for (double v : sweep_values) (void)apply_sweep(base, sweep_variable, v);
}

double stable_sum(const std::vector<double>& v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

std::vector<ResultRow> run_cell(const ExperimentSpec& spec, std::size_t vi, int trial) {
  const double value = spec.sweep_values.at(vi);
  const std::uint64_t cell = derive_seed(spec.seed, {static_cast<std::uint64_t>(vi), static_cast<std::uint64_t>(trial)});
  const Scenario base = apply_sweep(spec.base, spec.sweep_variable, value);
  SeededRng geo(derive_seed(cell, {0}));
  const Scenario s = realize(base, geo);
  const DistanceSet d = distances(s);
  SeededRng chan(derive_seed(cell, {1}));
  const ChannelSet ch = generate_channels(s, d, chan);
  SchemeOptions opt = spec.options;
  opt.li.seed = derive_seed(cell, {3});
  MleSearch mle = spec.mle;
  mle.parallel = !spec.parallel;

  std::vector<ResultRow> rows;
  for (SchemeId id : spec.schemes) {
    ResultRow row;
    row.row_type = "trial";
    row.scheme = to_string(id);
    row.sweep_variable = to_string(spec.sweep_variable);
    row.sweep_value = value;
    row.trial = trial;
    row.sum_rate = row.mle_rmse = row.crlb_bound = row.mean_isr = kNaN;
    row.n0 = row.sum_ne = row.eta0 = row.iterations = kNaN;
    try {
      const SchemeOutcome out = run_scheme(id, s, d, ch, opt);
      row.n0 = out.plan.n0;
      double ne = 0.0;
      for (int n : out.plan.n_e) ne += n;
      row.sum_ne = ne;
      row.eta0 = out.plan.eta0;
      row.iterations = out.iterations;
      const SystemMetrics met = evaluate_metrics(out, s, ch, spec.misaligned);
      row.sum_rate = met.sum_rate;
      row.mean_isr = met.mean_isr;

      const RssTruth truth = rss_truth(out);
      std::vector<RssComponents> comps;
      Eigen::VectorXd means(s.E);
      for (int e = 0; e < s.E; ++e) {
        comps.push_back(rss_components(e, s, d, truth));
        means(e) = comps.back().c;
      }
      try {
        row.crlb_bound = fim_crlb(s, comps, truth.aris_present).rmse_bound;
      } catch (const std::exception&) {
        row.crlb_bound = kNaN;
      }
      SeededRng obs(derive_seed(cell, {2}));
      const Eigen::VectorXd r = sample_observations(means, s.sigma_db, obs);
      const AdversaryModel adv = make_adversary(s, comps, truth.aris_present);
      const MleResult est = mle_estimate(r, adv, mle);
      row.mle_rmse = (est.estimate.position() - s.su_pos).norm();
      row.status = out.warnings.empty() ? "ok" : "clamped";
    } catch (const InfeasibleError&) {
      row.status = "infeasible";
    } catch (const UnidentifiableError&) {
      row.status = "unidentifiable";
    } catch (const std::exception&) {
      row.status = "error";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> summarize(const ExperimentSpec& spec, const std::vector<ResultRow>& trial_rows) {
  std::vector<ResultRow> out;
  for (double value : spec.sweep_values) {
    for (SchemeId id : spec.schemes) {
      const std::string tag = to_string(id);
      std::vector<double> rate, err2, bound2, isr, n0, ne, eta, iters;
      for (const ResultRow& r : trial_rows) {
        if (r.scheme != tag || r.sweep_value != value || !usable(r)) continue;
        rate.push_back(r.sum_rate);
        err2.push_back(r.mle_rmse * r.mle_rmse);
        if (std::isfinite(r.crlb_bound)) bound2.push_back(r.crlb_bound * r.crlb_bound);
        isr.push_back(r.mean_isr);
        n0.push_back(r.n0);
        ne.push_back(r.sum_ne);
        eta.push_back(r.eta0);
        iters.push_back(r.iterations);
      }
      auto mean = [](const std::vector<double>& v) { return v.empty() ? kNaN : stable_sum(v) / v.size(); };
      ResultRow s;
      s.row_type = "summary";
      s.scheme = tag;
      s.sweep_variable = to_string(spec.sweep_variable);
      s.sweep_value = value;
      s.trial = static_cast<int>(rate.size());
      s.status = rate.empty() ? "empty" : "ok";
      s.sum_rate = mean(rate);
      s.mle_rmse = std::sqrt(mean(err2));
      s.crlb_bound = std::sqrt(mean(bound2));
      s.mean_isr = mean(isr);
      s.n0 = mean(n0);
      s.sum_ne = mean(ne);
      s.eta0 = mean(eta);
      s.iterations = mean(iters);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t nv = spec.sweep_values.size();
  const auto nt = static_cast<std::size_t>(spec.trials);
  std::vector<std::vector<ResultRow>> cells(nv * nt);
  const auto ncell = static_cast<long long>(cells.size());
  if (spec.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long c = 0; c < ncell; ++c) {
      const auto i = static_cast<std::size_t>(c);
      cells[i] = run_cell(spec, i / nt, static_cast<int>(i % nt));
    }
  } else {
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = run_cell(spec, i / nt, static_cast<int>(i % nt));
  }
  std::vector<ResultRow> rows;
  for (auto& c : cells)
    for (auto& r : c) rows.push_back(std::move(r));
  std::vector<ResultRow> summary = summarize(spec, rows);
  rows.insert(rows.end(), summary.begin(), summary.end());
  return rows;
}

}  // namespace aris
