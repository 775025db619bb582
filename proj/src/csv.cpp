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


#include "aris/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "aris/errors.hpp"

namespace aris {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"row_type", "scheme",   "sweep_variable", "sweep_value", "trial",
                                             "status",   "sum_rate", "mle_rmse",       "crlb_bound",  "mean_isr",
                                             "n0",       "sum_ne",   "eta0",           "iterations"};
  return cols;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw DomainError("not a number: '" + s + "'");
  return v;
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const ResultRow& r : rows) {
    os << r.row_type << ',' << r.scheme << ',' << r.sweep_variable << ',' << format_double(r.sweep_value) << ','
       << r.trial << ',' << r.status << ',' << format_double(r.sum_rate) << ',' << format_double(r.mle_rmse) << ','
       << format_double(r.crlb_bound) << ',' << format_double(r.mean_isr) << ',' << format_double(r.n0) << ','
       << format_double(r.sum_ne) << ',' << format_double(r.eta0) << ',' << format_double(r.iterations) << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(f, rows);
  f.flush();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<ResultRow> parse_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("csv: missing header");
  std::string expected;
  for (const auto& c : csv_columns()) expected += (expected.empty() ? "" : ",") + c;
  if (line != expected) throw DomainError("csv: unexpected header '" + line + "'");
  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != csv_columns().size())
      throw DomainError("csv: line " + std::to_string(lineno) + " has " + std::to_string(f.size()) + " fields");
    ResultRow r;
    r.row_type = f[0];
    r.scheme = f[1];
    r.sweep_variable = f[2];
    r.sweep_value = parse_double(f[3]);
    r.trial = static_cast<int>(parse_double(f[4]));
    r.status = f[5];
    r.sum_rate = parse_double(f[6]);
    r.mle_rmse = parse_double(f[7]);
    r.crlb_bound = parse_double(f[8]);
    r.mean_isr = parse_double(f[9]);
    r.n0 = parse_double(f[10]);
    r.sum_ne = parse_double(f[11]);
    r.eta0 = parse_double(f[12]);
    r.iterations = parse_double(f[13]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
  return parse_csv(f);
}

}  // namespace aris
