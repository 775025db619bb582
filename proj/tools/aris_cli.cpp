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


// Command-line front end: partition / optimize / localize / experiment.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "aris/baselines.hpp"
#include "aris/config.hpp"
#include "aris/csv.hpp"
#include "aris/errors.hpp"
#include "aris/experiment.hpp"
#include "aris/localization.hpp"
#include "aris/partition.hpp"

namespace {

using namespace aris;

struct Common {
  std::string config;
  std::uint64_t seed = 1;
  std::string out;
  std::string scheme = "adaptive";
};

RunConfig load(const Common& c, const RunConfig& base = RunConfig{}) {
  return c.config.empty() ? base : load_config(c.config, base);
}

struct Instance {
  Scenario s;
  DistanceSet d;
  ChannelSet ch;
};

Instance instance(const RunConfig& cfg, std::uint64_t seed) {
  Instance in;
  SeededRng geo(derive_seed(seed, {0}));
  in.s = cfg.scenario.placed() ? cfg.scenario : realize(cfg.scenario, geo);
  in.d = distances(in.s);
  SeededRng chan(derive_seed(seed, {1}));
  in.ch = generate_channels(in.s, in.d, chan);
  return in;
}

std::ostream& output(const Common& c, std::ofstream& file) {
  if (c.out.empty() || c.out == "-") return std::cout;
  file.open(c.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + c.out + "' for writing");
  return file;
}

int cmd_partition(const Common& c) {
  const RunConfig cfg = load(c);
  const Instance in = instance(cfg, c.seed);
  const SchemeId id = parse_scheme(c.scheme);
  PartitionPlan plan;
  switch (id) {
    case SchemeId::Adaptive: plan = adaptive_plan(in.s, in.d); break;
    case SchemeId::Fixed: plan = fixed_plan(in.s); break;
    case SchemeId::NoPartition: plan = no_partition_plan(in.s); break;
    case SchemeId::NoAris: throw DomainError("no_aris has no partition");
  }
  std::ofstream file;
  std::ostream& os = output(c, file);
  os << "element,role,count,power_share,power_w\n";
  os << "ce,communication," << plan.n0 << ',' << format_double(plan.eta0) << ',' << format_double(plan.p0) << '\n';
  for (std::size_t e = 0; e < plan.n_e.size(); ++e)
    os << "li" << e << ",interference," << plan.n_e[e] << ',' << format_double(plan.eta_e[e]) << ','
       << format_double(plan.p_e[e]) << '\n';
  std::cerr << describe(plan) << '\n';
  return 0;
}

int cmd_optimize(const Common& c) {
  const RunConfig cfg = load(c);
  const Instance in = instance(cfg, c.seed);
  const SchemeId id = parse_scheme(c.scheme);
  if (id == SchemeId::NoAris) throw DomainError("optimize traces the surface loops; use adaptive, fixed or no_partition");
  PartitionPlan plan = id == SchemeId::Adaptive ? adaptive_plan(in.s, in.d)
                       : id == SchemeId::Fixed  ? fixed_plan(in.s)
                                                : no_partition_plan(in.s);
  const CeProblem p = make_ce_problem(in.ch, in.s, plan);
  std::vector<CeTraceRow> ce_trace;
  const CeState ce = optimize_ce(p, cfg.options.fp, initial_ce_state(p), &ce_trace);

  std::ofstream file;
  std::ostream& os = output(c, file);
  os << "loop,mu,iteration,objective,objective_after_update,metric,margin_su,margin_aris\n";
  for (const auto& r : ce_trace)
    os << "ce,," << r.iteration << ',' << format_double(r.q3) << ',' << format_double(r.q3_updated) << ','
       << format_double(r.sum_rate) << ',' << format_double(r.su_margin) << ',' << format_double(r.aris_margin) << '\n';
  if (id != SchemeId::NoPartition) {
    for (int e = 0; e < in.s.E; ++e) {
      if (plan.n_e[static_cast<std::size_t>(e)] < 1) continue;
      LiProblem lp = make_li_problem(in.ch, plan, e, ce);
      if (!(lp.p_v > cfg.options.min_an_power)) {
        std::cerr << "warning: MU " << e << " AN budget " << lp.p_v << " W clamped\n";
        lp.p_v = cfg.options.min_an_power;
      }
      std::vector<LiTraceRow> tr;
      LiConfig lc = cfg.options.li;
      lc.seed = derive_seed(c.seed, {3, static_cast<std::uint64_t>(e)});
      optimize_li(lp, cfg.options.fp, lc, initial_li_state(lp), &tr);
      for (const auto& r : tr)
        os << "li," << e << ',' << r.iteration << ',' << format_double(r.q4) << ",," << format_double(r.isr) << ",,"
           << format_double(r.an_margin) << '\n';
    }
  }
  std::cerr << "sum rate " << sum_rate(ce, p) << " bit/s/Hz after " << ce.iterations << " iterations; "
            << describe(plan) << '\n';
  return 0;
}

int cmd_localize(const Common& c, int trials) {
  const RunConfig cfg = load(c);
  const Instance in = instance(cfg, c.seed);
  SchemeOptions opt = cfg.options;
  opt.li.seed = derive_seed(c.seed, {3});
  const SchemeOutcome out = run_scheme(parse_scheme(c.scheme), in.s, in.d, in.ch, opt);
  for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
  const RssTruth truth = rss_truth(out);
  std::vector<RssComponents> comps;
  Eigen::VectorXd means(in.s.E);
  for (int e = 0; e < in.s.E; ++e) {
    comps.push_back(rss_components(e, in.s, in.d, truth));
    means(e) = comps.back().c;
  }
  double bound = std::nan("");
  try {
    bound = fim_crlb(in.s, comps, truth.aris_present).rmse_bound;
  } catch (const SingularError& ex) {
    std::cerr << "warning: " << ex.what() << " (rank " << ex.rank() << ")\n";
  }
  const AdversaryModel adv = make_adversary(in.s, comps, truth.aris_present);
  std::ofstream file;
  std::ostream& os = output(c, file);
  os << "trial,x,y,z,g_r,p_s,error,crlb_bound,refined\n";
  double err2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    SeededRng obs(derive_seed(c.seed, {2, static_cast<std::uint64_t>(t)}));
    const MleResult r = mle_estimate(sample_observations(means, in.s.sigma_db, obs), adv, cfg.mle);
    const double err = (r.estimate.position() - in.s.su_pos).norm();
    err2 += err * err;
    const ParamVector& p = r.estimate;
    os << t << ',' << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z) << ','
       << format_double(p.g_r) << ',' << format_double(p.p_s) << ',' << format_double(err) << ','
       << format_double(bound) << ',' << (r.refined ? 1 : 0) << '\n';
  }
  std::cerr << "RMSE " << std::sqrt(err2 / trials) << " m, CRLB bound " << bound << " m\n";
  return 0;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_double(part));
  return v;
}

int cmd_experiment(const Common& c, int trials, const std::string& sweep, const std::string& values,
                   const std::string& schemes, bool serial) {
  RunConfig defaults;
  defaults.options = sweep_options();
  const RunConfig cfg = load(c, defaults);
  ExperimentSpec spec;
  spec.base = cfg.scenario;
  spec.options = cfg.options;
  spec.mle = cfg.mle;
  spec.seed = c.seed;
  spec.trials = trials;
  spec.sweep_variable = parse_sweep(sweep);
  spec.sweep_values = parse_values(values);
  spec.out_path = c.out;
  spec.parallel = !serial;
  if (!schemes.empty() && schemes != "all") {
    spec.schemes.clear();
    std::stringstream ss(schemes);
    std::string part;
    while (std::getline(ss, part, ',')) spec.schemes.push_back(parse_scheme(part));
  }
  const auto rows = run_experiment(spec);
  if (c.out.empty() || c.out == "-") {
    write_csv(std::cout, rows);
  } else {
    emit_csv(rows, c.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ARIS partition, beamforming and localization-privacy toolkit"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Scenario configuration file (key = value)");
    sub->add_option("--seed", common.seed, "Base random seed")->capture_default_str();
    sub->add_option("--out", common.out, "Output CSV path ('-' or empty for stdout)");
  };
  int trials = 200;
  std::string sweep = "d_se", values = "200,250,300,350,400,450,500", schemes = "all";
  bool serial = false;

  auto* part = app.add_subcommand("partition", "Print the closed-form partition and power plan");
  add_common(part);
  part->add_option("--scheme", common.scheme, "adaptive | fixed | no_partition")->capture_default_str();

  auto* opt = app.add_subcommand("optimize", "Run both optimisation loops on one instance and emit traces");
  add_common(opt);
  opt->add_option("--scheme", common.scheme, "adaptive | fixed | no_partition")->capture_default_str();

  auto* loc = app.add_subcommand("localize", "Adversary Monte Carlo on one optimised instance");
  add_common(loc);
  loc->add_option("--scheme", common.scheme, "adaptive | fixed | no_partition | no_aris")->capture_default_str();
  loc->add_option("--trials", trials, "Observation draws")->capture_default_str()->check(CLI::PositiveNumber);

  auto* exp = app.add_subcommand("experiment", "Sweep one variable over Monte Carlo trials");
  add_common(exp);
  exp->add_option("--scheme", schemes, "Comma list of schemes or 'all'")->capture_default_str();
  exp->add_option("--trials", trials, "Trials per sweep value")->capture_default_str()->check(CLI::PositiveNumber);
  exp->add_option("--sweep", sweep, "d_se | p_r_max | n_t | e_count | omega")->capture_default_str();
  exp->add_option("--values", values, "Comma list of sweep values (m, W, counts)")->capture_default_str();
  exp->add_flag("--serial", serial, "Disable the OpenMP cell loop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (*part) return cmd_partition(common);
    if (*opt) return cmd_optimize(common);
    if (*loc) return cmd_localize(common, trials);
    if (*exp) return cmd_experiment(common, trials, sweep, values, schemes, serial);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}
