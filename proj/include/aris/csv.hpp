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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aris/experiment.hpp"

namespace aris {

// Column order of every result file.
const std::vector<std::string>& csv_columns();

// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);
double parse_double(const std::string& s);  // throws DomainError

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

std::vector<ResultRow> parse_csv(std::istream& is);
std::vector<ResultRow> read_csv(const std::string& path);

}  // namespace aris
