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

// Text formats: edge lists, labels, traces, reports and ranked scores.
//
//   edges   follower<TAB>followee
//   labels  node<TAB>label
//   trace   frame<TAB>retweeter<TAB>source      (integer frames)
//           timestamp<TAB>retweeter<TAB>source  (ISO-8601, needs a frame width)
//
// Seed posters appear in a trace with source "-". Blank lines and lines
// starting with '#' are skipped everywhere.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "linkscope/experiment.hpp"
#include "linkscope/graph.hpp"
#include "linkscope/propagation.hpp"
#include "linkscope/scoring.hpp"

namespace linkscope {

// Dense ids are handed out in order of first appearance.
class NodeIdMap {
 public:
  NodeId intern(std::string_view name);
  std::optional<NodeId> find(std::string_view name) const;
  const std::string& name(NodeId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

struct LoadedGraph {
  DirectedGraph graph;
  NodeIdMap ids;
  std::optional<NoNPartition> partition;
};

// Nodes that only appear in the label file become isolated nodes.
LoadedGraph load_graph(const std::string& edge_path, const std::optional<std::string>& label_path = {});
LoadedGraph parse_graph(std::istream& edges, std::istream* labels, const std::string& edge_source = "<edges>",
                        const std::string& label_source = "<labels>");

// One node name per line. Unknown names are an error.
std::vector<NodeId> load_seed_list(const std::string& path, const NodeIdMap& ids);
std::vector<NodeId> parse_seed_list(std::istream& in, const NodeIdMap& ids, const std::string& source = "<seeds>");

enum class NonEdgePolicy { kReject, kInsertEdge, kDrop };
std::optional<NonEdgePolicy> parse_non_edge_policy(std::string_view name);

// "1h", "30m", "3600s", "2d", "250ms", or a bare number of seconds.
std::int64_t parse_duration_us(std::string_view text);

// Microseconds since the Unix epoch. Accepts YYYY-MM-DD, optionally followed
// by [T ]HH:MM[:SS[.frac]] and Z or +HH:MM / -HH:MM.
std::optional<std::int64_t> parse_iso8601_us(std::string_view text);

struct TraceOptions {
  std::optional<std::int64_t> frame_width_us;
  NonEdgePolicy non_edge = NonEdgePolicy::kReject;
};

struct TraceLoadReport {
  std::size_t records = 0;
  std::size_t seeds = 0;
  std::size_t dropped = 0;
  std::size_t inserted = 0;
  bool timestamped = false;
};

// May add nodes and edges to `graph` under NonEdgePolicy::kInsertEdge.
PropagationTrace load_trace(const std::string& path, LoadedGraph& graph, const TraceOptions& opts = {},
                            TraceLoadReport* report = nullptr);
PropagationTrace parse_trace(std::istream& in, LoadedGraph& graph, const TraceOptions& opts = {},
                             TraceLoadReport* report = nullptr, const std::string& source = "<trace>");

enum class ReportFormat { kCsv, kJson };
std::optional<ReportFormat> parse_report_format(std::string_view name);

inline constexpr const char* kReportCsvHeader =
    "method,q,q_frac,reachability,baseline_mean,efficiency,between_frac,flags";

// Both formats audit the efficiency column before writing. CSV carries the
// rows only; JSON also carries the baseline and provenance blocks.
void write_report(const ExperimentReport& report, std::ostream& out, ReportFormat format);
void write_report(const ExperimentReport& report, const std::string& path, ReportFormat format);
ExperimentReport read_report(std::istream& in, ReportFormat format);
ExperimentReport read_report(const std::string& path);

// rank, follower, followee, score; one line per entry of `ranked`.
void write_scores(std::ostream& out, const RemovalSet& ranked, const NodeIdMap* ids);

void write_edge_list(std::ostream& out, const DirectedGraph& graph, const NodeIdMap* ids);
void write_labels(std::ostream& out, const NoNPartition& partition, const NodeIdMap* ids);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace linkscope
