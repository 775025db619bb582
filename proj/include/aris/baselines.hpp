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

#include <optional>
#include <string>
#include <vector>

#include "aris/channel.hpp"
#include "aris/comm_optimizer.hpp"
#include "aris/li_optimizer.hpp"
#include "aris/localization.hpp"
#include "aris/partition.hpp"

namespace aris {

enum class SchemeId { Adaptive, Fixed, NoPartition, NoAris };

std::string to_string(SchemeId id);
SchemeId parse_scheme(const std::string& tag);  // throws DomainError
const std::vector<SchemeId>& all_schemes();

struct WmmseTraceRow {
  int iteration;
  double sum_rate;
};

// Weighted-MMSE sum-rate beamforming on the direct links only. Runs from the
// matched-filter, regularised zero-forcing and single-receiver starts and
// returns the best result with its trace.
ComplexMatrix wmmse_beamforming(const CeChannels& direct, double sigma2, double p_max, const FpConfig& cfg,
                                std::vector<WmmseTraceRow>* trace = nullptr);

struct SchemeOptions {
  FpConfig fp{};
  LiConfig li{};
  double min_an_power = 1e-12;  // W, floor applied when the AN budget is exhausted
};

struct SchemeOutcome {
  SchemeId id = SchemeId::Adaptive;
  PartitionPlan plan;
  CeState ce;
  std::vector<std::optional<LiState>> li;  // one slot per MU, empty when no AN
  std::vector<double> an_budget;           // AN budget actually used per MU, W
  std::vector<std::string> warnings;
  int iterations = 0;                      // CE outer iterations (WMMSE for no_aris)
};

// Runs one scheme on a placed scenario and one channel realisation.
SchemeOutcome run_scheme(SchemeId id, const Scenario& s, const DistanceSet& d, const ChannelSet& ch,
                         const SchemeOptions& opt);

// Metrics shared by every scheme. With `misaligned` set, the paths through
// partitions that were not optimised for a receiver (CE -> MU is always
// included; LI partition i -> RU k and -> MU e != i are optional) enter both
// the SINR and the ISR.
struct SystemMetrics {
  Eigen::VectorXd sinr;
  double sum_rate = 0.0;
  std::vector<double> isr;
  double mean_isr = 0.0;
};

SystemMetrics evaluate_metrics(const SchemeOutcome& out, const Scenario& s, const ChannelSet& ch,
                               bool misaligned = false);

// RSS truth seen by the malicious receivers for this outcome.
RssTruth rss_truth(const SchemeOutcome& out);

}  // namespace aris
