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


#include "aris/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "aris/errors.hpp"
#include "aris/units.hpp"

namespace aris {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Leading number and the (trimmed) remainder.
std::pair<double, std::string> split_number(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  const auto res = std::from_chars(first, t.data() + t.size(), v);
  if (res.ec != std::errc() || !std::isfinite(v)) throw DomainError("expected a number in '" + text + "'");
  return {v, trim(std::string(res.ptr, t.data() + t.size()))};
}

double parse_number(const std::string& text) {
  const auto [v, rest] = split_number(text);
  if (!rest.empty()) throw DomainError("unexpected trailing text in '" + text + "'");
  return v;
}

int parse_count(const std::string& text) {
  const double v = parse_number(text);
  if (v < 0 || std::floor(v) != v || v > 1e9) throw DomainError("expected a non-negative integer, got '" + text + "'");
  return static_cast<int>(v);
}

Position parse_position(const std::string& text) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> xs;
  while (std::getline(ss, part, ',')) xs.push_back(parse_number(part));
  if (xs.size() != 3) throw DomainError("expected 'x, y, z', got '" + text + "'");
  return {xs[0], xs[1], xs[2]};
}

std::vector<Position> parse_positions(const std::string& text) {
  std::vector<Position> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';'))
    if (!trim(part).empty()) out.push_back(parse_position(part));
  return out;
}

Hemisphere parse_hemisphere(const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "above_ground") return Hemisphere::AboveGround;
  if (t == "above_source") return Hemisphere::AboveSource;
  if (t == "full_sphere") return Hemisphere::FullSphere;
  throw DomainError("unknown hemisphere '" + text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    m["su_pos"] = [](RunConfig& c, const std::string& v) { c.scenario.su_pos = parse_position(v); };
    m["aris_pos"] = [](RunConfig& c, const std::string& v) { c.scenario.aris_pos = parse_position(v); };
    m["ru_center"] = [](RunConfig& c, const std::string& v) { c.scenario.ru_center = parse_position(v); };
    m["ru_radius"] = [](RunConfig& c, const std::string& v) { c.scenario.ru_radius = parse_number(v); };
    m["mu_distance"] = [](RunConfig& c, const std::string& v) { c.scenario.mu_distance = parse_number(v); };
    m["d_se"] = m["mu_distance"];
    m["mu_hemisphere"] = [](RunConfig& c, const std::string& v) { c.scenario.mu_hemisphere = parse_hemisphere(v); };
    m["ru_pos"] = [](RunConfig& c, const std::string& v) { c.scenario.ru_pos = parse_positions(v); };
    m["mu_pos"] = [](RunConfig& c, const std::string& v) { c.scenario.mu_pos = parse_positions(v); };
    m["M"] = [](RunConfig& c, const std::string& v) { c.scenario.M = parse_count(v); };
    m["K"] = [](RunConfig& c, const std::string& v) { c.scenario.K = parse_count(v); };
    m["E"] = [](RunConfig& c, const std::string& v) { c.scenario.E = parse_count(v); };
    m["n_t"] = [](RunConfig& c, const std::string& v) { c.scenario.n_t = parse_count(v); };
    m["p_s_max"] = [](RunConfig& c, const std::string& v) { c.scenario.p_s_max = parse_power(v); };
    m["p_r_max"] = [](RunConfig& c, const std::string& v) { c.scenario.p_r_max = parse_power(v); };
    m["sigma2"] = [](RunConfig& c, const std::string& v) { c.scenario.sigma2 = parse_power(v); };
    m["sigma_v2"] = [](RunConfig& c, const std::string& v) { c.scenario.sigma_v2 = parse_power(v); };
    m["sigma_db"] = [](RunConfig& c, const std::string& v) { c.scenario.sigma_db = parse_number(v); };
    m["l0_db"] = [](RunConfig& c, const std::string& v) { c.scenario.loss.l0_db = parse_number(v); };
    m["exponent"] = [](RunConfig& c, const std::string& v) { c.scenario.loss.exponent = parse_number(v); };
    m["omega"] = [](RunConfig& c, const std::string& v) { c.scenario.omega = parse_number(v); };
    m["gamma_st"] = [](RunConfig& c, const std::string& v) { c.scenario.gamma_st = parse_threshold(v); };
    m["kappa_st"] = [](RunConfig& c, const std::string& v) { c.scenario.kappa_st = parse_threshold(v); };
    m["varrho_st"] = [](RunConfig& c, const std::string& v) { c.scenario.varrho_st = parse_threshold(v); };
    m["fp.max_outer_iters"] = [](RunConfig& c, const std::string& v) { c.options.fp.max_outer_iters = parse_count(v); };
    m["fp.rel_tol"] = [](RunConfig& c, const std::string& v) { c.options.fp.rel_tol = parse_number(v); };
    m["fp.bisect_tol"] = [](RunConfig& c, const std::string& v) { c.options.fp.bisect_tol = parse_number(v); };
    m["fp.bisect_max"] = [](RunConfig& c, const std::string& v) { c.options.fp.bisect_max = parse_count(v); };
    m["li.random_restarts"] = [](RunConfig& c, const std::string& v) { c.options.li.random_restarts = parse_count(v); };
    m["li.max_sweeps"] = [](RunConfig& c, const std::string& v) { c.options.li.max_sweeps = parse_count(v); };
    m["li.sweep_tol"] = [](RunConfig& c, const std::string& v) { c.options.li.sweep_tol = parse_number(v); };
    m["mle.half_width"] = [](RunConfig& c, const std::string& v) { c.mle.half_width = parse_number(v); };
    m["mle.pitch"] = [](RunConfig& c, const std::string& v) { c.mle.pitch = parse_number(v); };
    m["mle.g_r_lo"] = [](RunConfig& c, const std::string& v) { c.mle.g_r_lo = parse_number(v); };
    m["mle.g_r_hi"] = [](RunConfig& c, const std::string& v) { c.mle.g_r_hi = parse_number(v); };
    m["mle.g_r_step"] = [](RunConfig& c, const std::string& v) { c.mle.g_r_step = parse_number(v); };
    m["mle.p_s_lo"] = [](RunConfig& c, const std::string& v) { c.mle.p_s_lo = parse_number(v); };
    m["mle.p_s_hi"] = [](RunConfig& c, const std::string& v) { c.mle.p_s_hi = parse_number(v); };
    m["mle.p_s_step"] = [](RunConfig& c, const std::string& v) { c.mle.p_s_step = parse_number(v); };
    m["mle.gn_max_iter"] = [](RunConfig& c, const std::string& v) { c.mle.gn_max_iter = parse_count(v); };
    m["mle.gn_step_tol"] = [](RunConfig& c, const std::string& v) { c.mle.gn_step_tol = parse_number(v); };
    m["min_an_power"] = [](RunConfig& c, const std::string& v) { c.options.min_an_power = parse_power(v); };
    return m;
  }();
  return table;
}

}  // namespace

double parse_power(const std::string& text) {
  const auto [v, unit] = split_number(text);
  const std::string u = lower(unit);
  double w = 0.0;
  if (u.empty() || u == "w") {
    w = v;
  } else if (u == "mw") {
    w = v * 1e-3;
  } else if (u == "dbm") {
    w = dbm_to_watts(v);
  } else if (u == "dbw") {
    w = db_to_linear(v);
  } else {
    throw DomainError("unknown power unit '" + unit + "' in '" + text + "'");
  }
  if (!(w > 0.0)) throw DomainError("power must be > 0, got '" + text + "'");
  return w;
}

double parse_threshold(const std::string& text) {
  const auto [v, unit] = split_number(text);
  const std::string u = lower(unit);
  if (u.empty()) return v;
  if (u == "db") return db_to_linear(v);
  throw DomainError("unknown threshold unit '" + unit + "' in '" + text + "'");
}

RunConfig parse_config(const std::string& text, const RunConfig& base) {
  RunConfig cfg = base;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  const auto& table = setters();
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    auto where = [&] { return "config line " + std::to_string(lineno) + ": "; };
    if (eq == std::string::npos) throw DomainError(where() + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) throw DomainError(where() + "unknown key '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const std::exception& ex) {
      throw DomainError(where() + key + ": " + ex.what());
    }
  }
  cfg.scenario.validate();
  cfg.options.fp.validate();
  cfg.mle.validate();
  return cfg;
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  try {
    return parse_config(buf.str(), base);
  } catch (const DomainError& ex) {
    throw DomainError(path + ": " + ex.what());
  }
}

}  // namespace aris
