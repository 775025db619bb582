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


// Exhaustive least-squares scans over the adversary's search grid. Per grid
// position the direct and reflected geometry factors are computed once and
// reused across the nuisance (G_R, p_S) sub-grid.

#include <cmath>
#include <limits>
#include <vector>

#include "aris/localization.hpp"
#include "aris/units.hpp"

namespace aris {

namespace {

struct ScanContext {
  const Eigen::VectorXd& r;
  const AdversaryModel& m;
  const SearchGrid& g;
  std::vector<double> g_lin, p_lin, n_lin, reflect_known;
  std::size_t per_position;

  ScanContext(const Eigen::VectorXd& obs, const AdversaryModel& model, const SearchGrid& grid)
      : r(obs), m(model), g(grid), per_position(grid.g_r.size() * grid.p_s.size()) {
    for (double v : g.g_r) g_lin.push_back(std::pow(10.0, v / 10.0));
    for (double v : g.p_s) p_lin.push_back(std::pow(10.0, v / 10.0));
    for (int e = 0; e < m.E(); ++e) {
      const double pn = m.p_n[static_cast<std::size_t>(e)];
      n_lin.push_back(pn == kNegInf ? 0.0 : std::pow(10.0, pn / 10.0));
      reflect_known.push_back(
          m.reflected ? std::pow(10.0, path_loss_db((m.mu_pos[static_cast<std::size_t>(e)] - m.aris_pos).norm(), m.loss) / 10.0)
                      : 0.0);
    }
  }

  Position position(std::size_t ipos) const {
    const std::size_t nz = g.zs.size(), ny = g.ys.size();
    return {g.xs[ipos / (ny * nz)], g.ys[(ipos / nz) % ny], g.zs[ipos % nz]};
  }

  // Best nuisance point at one position; `direct` and `reflect` are scratch.
  GridBest scan(std::size_t ipos, std::vector<double>& direct, std::vector<double>& reflect) const {
    const Position src = position(ipos);
    const int E = m.E();
    const double l_H = m.reflected ? std::pow(10.0, path_loss_db((m.aris_pos - src).norm(), m.loss) / 10.0) : 0.0;
    for (int e = 0; e < E; ++e) {
      const auto i = static_cast<std::size_t>(e);
      direct[i] = std::pow(10.0, path_loss_db((m.mu_pos[i] - src).norm(), m.loss) / 10.0);
      reflect[i] = reflect_known[i] * l_H;
    }
    GridBest best;
    const std::size_t np = g.p_s.size();
    for (std::size_t ig = 0; ig < g.g_r.size(); ++ig) {
      for (std::size_t ip = 0; ip < np; ++ip) {
        double cost = 0.0;
        for (int e = 0; e < E; ++e) {
          const auto i = static_cast<std::size_t>(e);
          const double c = 10.0 * std::log10(p_lin[ip] * (direct[i] + g_lin[ig] * reflect[i]) + n_lin[i]);
          const double d = r(e) - c;
          cost += d * d;
        }
        if (cost < best.cost) {
          best.cost = cost;
          best.index = ipos * per_position + ig * np + ip;
        }
      }
    }
    return best;
  }

  void finish(GridBest& b) const {
    if (!std::isfinite(b.cost)) return;
    const std::size_t ipos = b.index / per_position, rest = b.index % per_position;
    const Position p = position(ipos);
    b.param = {p.x(), p.y(), p.z(), m.reflected ? g.g_r[rest / g.p_s.size()] : 0.0, g.p_s[rest % g.p_s.size()]};
  }
};

bool better(const GridBest& a, const GridBest& b) {
  return a.cost < b.cost || (a.cost == b.cost && a.index < b.index);
}

}  // namespace

GridBest grid_search_serial(const Eigen::VectorXd& r, const AdversaryModel& m, const SearchGrid& g) {
  const ScanContext ctx(r, m, g);
  std::vector<double> direct(static_cast<std::size_t>(m.E())), reflect(direct.size());
  GridBest best;
  for (std::size_t i = 0; i < g.positions(); ++i) {
    const GridBest b = ctx.scan(i, direct, reflect);
    if (better(b, best)) best = b;
  }
  ctx.finish(best);
  return best;
}

GridBest grid_search_parallel(const Eigen::VectorXd& r, const AdversaryModel& m, const SearchGrid& g) {
  const ScanContext ctx(r, m, g);
  const auto n = static_cast<long long>(g.positions());
  GridBest best;
#pragma omp parallel
  {
    std::vector<double> direct(static_cast<std::size_t>(m.E())), reflect(direct.size());
    GridBest local;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < n; ++i) {
      const GridBest b = ctx.scan(static_cast<std::size_t>(i), direct, reflect);
      if (better(b, local)) local = b;
    }
#pragma omp critical(aris_grid_reduce)
    if (better(local, best)) best = local;
  }
  ctx.finish(best);
  return best;
}

}  // namespace aris
