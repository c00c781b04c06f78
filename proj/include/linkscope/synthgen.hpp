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

// Two-group directed random graphs: node i follows node j with probability
// p[g_i][g_j]. Group 1 occupies ids [0, n1), group 2 ids [n1, n1 + n2).

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "linkscope/graph.hpp"

namespace linkscope {

struct TwoGroupParams {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  // Indexed (follower group, followee group).
  double p11 = 0.0;
  double p12 = 0.0;
  double p21 = 0.0;
  double p22 = 0.0;
  std::size_t n_ini = 0;
  std::uint64_t seed = 0;

  // Throws InputError for probabilities outside [0, 1] or n_ini > n1.
  void validate() const;
};

inline constexpr const char* kGroup1Label = "g1";
inline constexpr const char* kGroup2Label = "g2";

// Fewer between-network links, all carrying events from group 1 to group 2.
TwoGroupParams dataset1_preset();
// No group-2 -> group-1 follows, so group-1 cascades stay in group 1.
TwoGroupParams dataset2_preset();

struct TwoGroupGraph {
  DirectedGraph graph;
  NoNPartition partition;
  // Generated edges per (follower group, followee group) block.
  std::array<std::array<std::size_t, 2>, 2> block_edges{};
};

// One Bernoulli trial per ordered pair (i, j), i != j, in canonical order,
// drawn from counter_hash(seed, i, j).
TwoGroupGraph generate_two_group(const TwoGroupParams& params);

// n_ini distinct members of the label `group`, uniform without replacement.
// Throws InputError when the group is missing or too small.
std::vector<NodeId> sample_seeds(const NoNPartition& partition, std::size_t n_ini, std::uint64_t seed,
                                 const std::string& group = kGroup1Label);

}  // namespace linkscope
