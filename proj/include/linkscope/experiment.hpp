// Copyright 2026 The linkscope Authors.
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

// Removal sweeps: score once on the intact graph, remove growing top-q
// prefixes, measure reachability, compare against random removal.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linkscope/graph.hpp"
#include "linkscope/propagation.hpp"
#include "linkscope/scoring.hpp"
#include "linkscope/spectral.hpp"

namespace linkscope {

inline constexpr const char* kVersion = "linkscope 1.0.0";

enum class PropagationMode { kReplay, kIcm };

std::string to_string(PropagationMode mode);
std::optional<PropagationMode> parse_mode(const std::string& name);

struct SweepConfig {
  std::vector<ScoreMethod> methods;
  // The q grid is the union of absolute counts and fractions of m. A positive
  // fraction becomes max(1, round(f * m)); zero stays zero.
  std::vector<std::size_t> q_counts;
  std::vector<double> q_fractions;
  PropagationMode mode = PropagationMode::kReplay;
  std::size_t icm_runs = 1000;
  std::size_t baseline_trials = 10;
  std::uint64_t seed = 0;
  bool deterministic = true;
  SpectralConfig spectral;
};

// Sorted, de-duplicated q values. Throws InputError for q > m or a fraction
// outside [0, 1].
std::vector<std::size_t> resolve_q_grid(const SweepConfig& cfg, std::size_t edge_count);

struct SweepInputs {
  const DirectedGraph* graph = nullptr;
  const NoNPartition* partition = nullptr;
  // Replay mode.
  const PropagationTrace* trace = nullptr;
  // ICM mode.
  std::vector<NodeId> seeds;
  const TrivalencyAssignment* trivalency = nullptr;
};

struct ReportRow {
  std::string method;
  std::size_t q = 0;
  double q_frac = 0.0;
  double reachability = 0.0;
  double baseline_mean = 0.0;
  double efficiency = 0.0;
  std::optional<double> between_frac;  // needs a partition
  std::string flags;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct BaselineRow {
  std::size_t q = 0;
  double mean = 0.0;
  std::vector<double> trials;

  friend bool operator==(const BaselineRow&, const BaselineRow&) = default;
};

struct Provenance {
  std::string version = kVersion;
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t baseline_trials = 0;
  std::size_t icm_runs = 0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  bool deterministic = true;
  std::map<std::string, std::string> digests;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::vector<BaselineRow> baseline;
  Provenance provenance;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

// (r_rand - r_f) / r_rand, 0 when r_rand is 0. Throws InputError on negative
// input.
double efficiency(double r_rand, double r_f);

ExperimentReport run_sweep(const SweepInputs& inputs, const SweepConfig& cfg);

// Throws std::logic_error when a stored efficiency differs from the value
// recomputed from its reachability columns by more than 1e-12, or a fraction
// leaves [0, 1].
void audit_report(const ExperimentReport& report);

// FNV-1a 64-bit digest, lowercase hex.
std::string digest_hex(std::string_view bytes);
std::string graph_digest(const DirectedGraph& graph);

}  // namespace linkscope
