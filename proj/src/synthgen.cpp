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

#include "linkscope/synthgen.hpp"

#include <algorithm>

#include "linkscope/error.hpp"
#include "linkscope/random.hpp"

namespace linkscope {

void TwoGroupParams::validate() const {
  for (double p : {p11, p12, p21, p22}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError("follow probability " + std::to_string(p) + " is outside [0, 1]");
    }
  }
  if (n_ini > n1) {
    throw InputError("n_ini = " + std::to_string(n_ini) + " exceeds group-1 size " + std::to_string(n1));
  }
}

TwoGroupParams dataset1_preset() {
  TwoGroupParams p;
  p.n_ini = 5;
  p.n1 = 100;
  p.n2 = 100;
  p.p11 = 0.01;
  p.p22 = 0.01;
  p.p12 = 0.0;
  p.p21 = 0.005;
  return p;
}

TwoGroupParams dataset2_preset() {
  TwoGroupParams p;
  p.n_ini = 5;
  p.n1 = 100;
  p.n2 = 100;
  p.p11 = 0.01;
  p.p12 = 0.01;
  p.p22 = 0.005;
  p.p21 = 0.0;
  return p;
}

TwoGroupGraph generate_two_group(const TwoGroupParams& params) {
  params.validate();
  const std::size_t n = params.n1 + params.n2;
  const double prob[2][2] = {{params.p11, params.p12}, {params.p21, params.p22}};
  auto group = [&](std::size_t v) { return v < params.n1 ? 0 : 1; };

  TwoGroupGraph out;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double p = prob[group(i)][group(j)];
      if (p <= 0.0) continue;
      if (to_unit(counter_hash(params.seed, i, j)) < p) {
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
        ++out.block_edges[group(i)][group(j)];
      }
    }
  }
  out.graph = build_graph(edges, n);

  std::vector<std::uint32_t> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = static_cast<std::uint32_t>(group(v));
  out.partition = NoNPartition(std::move(labels), {kGroup1Label, kGroup2Label});
  return out;
}

std::vector<NodeId> sample_seeds(const NoNPartition& partition, std::size_t n_ini, std::uint64_t seed,
                                 const std::string& group) {
  if (n_ini == 0) return {};
  const auto label = partition.find_label(group);
  if (!label) throw InputError("partition has no group labelled '" + group + "'");
  std::vector<NodeId> pool = partition.members(*label);
  if (n_ini > pool.size()) {
    throw InputError("n_ini = " + std::to_string(n_ini) + " exceeds the size of group '" + group +
                     "' (" + std::to_string(pool.size()) + ")");
  }
  CounterStream rng(seed, 0x73656564ULL);
  for (std::size_t k = 0; k < n_ini; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(rng.bounded(pool.size() - k));
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(n_ini);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace linkscope
