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

// Follower-link scores of the product form score(i, j) = x[i] * x~[j], the
// edge-betweenness baseline, and removal-set selection.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linkscope/graph.hpp"
#include "linkscope/spectral.hpp"

namespace linkscope {

enum class ScoreMethod {
  kLes,
  kInDeg,
  kNetMelt,
  kEdgeBetweenness,
  kNonLesBet,
  kNonLesWit,
  kNonInDegBet,
  kNonInDegWit,
  kNonNetMeltBet,
  kNonNetMeltWit,
};

inline constexpr ScoreMethod kAllScoreMethods[] = {
    ScoreMethod::kLes,         ScoreMethod::kInDeg,       ScoreMethod::kNetMelt,
    ScoreMethod::kEdgeBetweenness, ScoreMethod::kNonLesBet, ScoreMethod::kNonLesWit,
    ScoreMethod::kNonInDegBet, ScoreMethod::kNonInDegWit, ScoreMethod::kNonNetMeltBet,
    ScoreMethod::kNonNetMeltWit,
};

// "LES", "InDeg", "NetMelt", "EdgeBetweenness", "NoN-LES-Bet", ...
std::string_view method_name(ScoreMethod method);
std::optional<ScoreMethod> parse_method(std::string_view name);
bool requires_partition(ScoreMethod method);

struct QualityFlags {
  bool nilpotent_fallback = false;
  bool unconverged = false;

  bool degraded() const { return nilpotent_fallback || unconverged; }
  // Semicolon-separated, empty when clean.
  std::string to_string() const;
  void merge(const EigenResult& r);
};

struct LinkScores {
  ScoreMethod method = ScoreMethod::kLes;
  // One score per edge of the full graph, canonical edge order.
  std::vector<double> scores;
  // x and x~; empty for edge betweenness.
  std::vector<double> source_vector;
  std::vector<double> target_vector;
  QualityFlags flags;
};

// Scores every edge of the full graph. NoN methods take their vectors from
// the between/within view but still score all edges. Throws InputError when a
// NoN method is called without a partition.
LinkScores score_links(ScoreMethod method, const DirectedGraph& graph, const NoNPartition* partition,
                       const SpectralConfig& cfg = {});

// Edge betweenness on the followed-by network A^T, unit edge lengths,
// Brandes dependency accumulation from every source.
LinkScores edge_betweenness(const DirectedGraph& graph);

// The q highest-scored edges, ties broken by (follower, followee) ascending.
// Throws InputError when q exceeds the edge count.
RemovalSet top_q(const DirectedGraph& graph, const LinkScores& scores, std::size_t q);

// Uniform sample of q edges without replacement (partial Fisher-Yates, so a
// smaller q with the same seed yields a prefix).
RemovalSet random_removal(const DirectedGraph& graph, std::size_t q, std::uint64_t seed);

// argmax over q of (sum of the top-q scores) / q. The running mean of a
// descending sequence never increases, so this is the size of the group tied
// with the top score; the largest such q is returned. Zero for an empty graph.
std::size_t auto_q(const DirectedGraph& graph, const LinkScores& scores);

}  // namespace linkscope
