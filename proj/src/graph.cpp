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

#include "linkscope/graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "linkscope/error.hpp"

namespace linkscope {

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.follower) + ", " + std::to_string(e.followee) + ")";
}

std::optional<EdgeId> DirectedGraph::find_edge(NodeId follower, NodeId followee) const {
  if (follower >= node_count_ || followee >= node_count_) return std::nullopt;
  const auto first = targets_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[follower]);
  const auto last = targets_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[follower + 1]);
  const auto it = std::lower_bound(first, last, followee);
  if (it == last || *it != followee) return std::nullopt;
  return static_cast<EdgeId>(it - targets_.begin());
}

DirectedGraph build_graph(std::span<const Edge> pairs, std::size_t node_count) {
  if (node_count > std::numeric_limits<NodeId>::max()) {
    throw InputError("node count " + std::to_string(node_count) + " exceeds id range");
  }
  DirectedGraph g;
  g.node_count_ = node_count;
  g.report_.input_pairs = pairs.size();

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Edge& e = pairs[k];
    if (e.follower >= node_count || e.followee >= node_count) {
      throw InputError("pair " + std::to_string(k) + " " + to_string(e) +
                       " has an id outside [0, " + std::to_string(node_count) + ")");
    }
    if (e.follower == e.followee) {
      ++g.report_.self_loops_dropped;
      continue;
    }
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  const auto unique_end = std::unique(edges.begin(), edges.end());
  g.report_.duplicates_dropped = static_cast<std::size_t>(edges.end() - unique_end);
  edges.erase(unique_end, edges.end());

  const std::size_t m = edges.size();
  g.out_offsets_.assign(node_count + 1, 0);
  g.in_offsets_.assign(node_count + 1, 0);
  g.sources_.resize(m);
  g.targets_.resize(m);
  for (EdgeId e = 0; e < m; ++e) {
    g.sources_[e] = edges[e].follower;
    g.targets_[e] = edges[e].followee;
    ++g.out_offsets_[edges[e].follower + 1];
    ++g.in_offsets_[edges[e].followee + 1];
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.in_offsets_[v + 1] += g.in_offsets_[v];
  }

  // Canonical order is sorted by follower, so filling in edge order leaves
  // each reverse bucket sorted by follower id.
  g.rev_sources_.resize(m);
  g.rev_edges_.resize(m);
  std::vector<EdgeId> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (EdgeId e = 0; e < m; ++e) {
    const EdgeId slot = cursor[g.targets_[e]]++;
    g.rev_sources_[slot] = g.sources_[e];
    g.rev_edges_[slot] = e;
  }
  return g;
}

NoNPartition::NoNPartition(std::vector<std::uint32_t> label_ids, std::vector<std::string> names)
    : labels_(std::move(label_ids)), names_(std::move(names)) {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] != kUnlabeled && labels_[v] >= names_.size()) {
      throw InputError("node " + std::to_string(v) + " has unknown label id " +
                       std::to_string(labels_[v]));
    }
  }
}

NoNPartition NoNPartition::from_labels(std::span<const std::string> labels) {
  std::vector<std::uint32_t> ids;
  std::vector<std::string> names;
  std::unordered_map<std::string, std::uint32_t> index;
  ids.reserve(labels.size());
  for (const auto& label : labels) {
    auto [it, inserted] = index.try_emplace(label, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(label);
    ids.push_back(it->second);
  }
  return NoNPartition(std::move(ids), std::move(names));
}

std::optional<std::uint32_t> NoNPartition::find_label(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - names_.begin());
}

std::vector<NodeId> NoNPartition::members(std::uint32_t label_id) const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == label_id) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

EdgeMask::EdgeMask(std::size_t size, bool value)
    : words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(size), count_(value ? size : 0) {
  if (value && (size & 63) != 0) words_.back() = (std::uint64_t{1} << (size & 63)) - 1;
}

void EdgeMask::set(EdgeId e) {
  const std::uint64_t bit = std::uint64_t{1} << (e & 63);
  if (!(words_[e >> 6] & bit)) {
    words_[e >> 6] |= bit;
    ++count_;
  }
}

void EdgeMask::reset(EdgeId e) {
  const std::uint64_t bit = std::uint64_t{1} << (e & 63);
  if (words_[e >> 6] & bit) {
    words_[e >> 6] &= ~bit;
    --count_;
  }
}

EdgeView::EdgeView(const DirectedGraph& graph) : graph_(&graph) {}

EdgeView::EdgeView(const DirectedGraph& graph, EdgeMask mask) : graph_(&graph) {
  if (mask.size() != graph.edge_count()) {
    throw InputError("edge mask size " + std::to_string(mask.size()) +
                     " does not match edge count " + std::to_string(graph.edge_count()));
  }
  mask_ = std::make_shared<const EdgeMask>(std::move(mask));
}

std::size_t EdgeView::edge_count() const {
  return mask_ ? mask_->count() : graph_->edge_count();
}

void EdgeView::multiply(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = graph_->node_count();
  for (NodeId i = 0; i < n; ++i) {
    double acc = 0.0;
    for (EdgeId e = graph_->out_begin(i); e < graph_->out_end(i); ++e) {
      if (contains(e)) acc += x[graph_->edge(e).followee];
    }
    out[i] = acc;
  }
}

void EdgeView::multiply_transpose(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = graph_->node_count();
  for (NodeId j = 0; j < n; ++j) {
    const auto followers = graph_->followers(j);
    const auto ids = graph_->follower_edges(j);
    double acc = 0.0;
    for (std::size_t k = 0; k < followers.size(); ++k) {
      if (contains(ids[k])) acc += x[followers[k]];
    }
    out[j] = acc;
  }
}

std::vector<EdgeId> EdgeView::edge_ids() const {
  std::vector<EdgeId> out;
  out.reserve(edge_count());
  for_each_edge([&](EdgeId e, const Edge&) { out.push_back(e); });
  return out;
}

std::vector<Edge> EdgeView::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for_each_edge([&](EdgeId, const Edge& edge) { out.push_back(edge); });
  return out;
}

EdgeMask EdgeView::mask() const {
  return mask_ ? *mask_ : EdgeMask(graph_->edge_count(), true);
}

RemovalSet RemovalSet::prefix(std::size_t q) const {
  q = std::min(q, entries_.size());
  return RemovalSet(std::vector<ScoredEdge>(entries_.begin(),
                                            entries_.begin() + static_cast<std::ptrdiff_t>(q)));
}

ClassifiedEdges classify_edges(const DirectedGraph& graph, const NoNPartition& partition) {
  std::vector<NodeId> missing;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (partition.label(v) == NoNPartition::kUnlabeled) missing.push_back(v);
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << missing.size() << " node(s) without a network label:";
    const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
    for (std::size_t k = 0; k < shown; ++k) msg << ' ' << missing[k];
    if (shown < missing.size()) msg << " ...";
    throw InputError(msg.str());
  }
  const std::size_t m = graph.edge_count();
  EdgeMask between(m, false);
  EdgeMask within(m, false);
  for (EdgeId e = 0; e < m; ++e) {
    const Edge edge = graph.edge(e);
    if (partition.label(edge.follower) == partition.label(edge.followee)) {
      within.set(e);
    } else {
      between.set(e);
    }
  }
  return {EdgeView(graph, std::move(between)), EdgeView(graph, std::move(within))};
}

EdgeView remove_edges(const EdgeView& view, const RemovalSet& removal) {
  EdgeMask mask = view.mask();
  const DirectedGraph& g = view.graph();
  for (const ScoredEdge& entry : removal.entries()) {
    const auto id = g.find_edge(entry.edge.follower, entry.edge.followee);
    if (!id || !mask.test(*id)) {
      throw InputError("cannot remove " + to_string(entry.edge) + ": not an edge of the view");
    }
    mask.reset(*id);
  }
  return EdgeView(g, std::move(mask));
}

EdgeView remove_edges(const DirectedGraph& graph, const RemovalSet& removal) {
  return remove_edges(EdgeView(graph), removal);
}

std::vector<std::size_t> in_degrees(const EdgeView& view) {
  std::vector<std::size_t> d(view.node_count(), 0);
  view.for_each_edge([&](EdgeId, const Edge& e) { ++d[e.followee]; });
  return d;
}

std::vector<std::size_t> out_degrees(const EdgeView& view) {
  std::vector<std::size_t> d(view.node_count(), 0);
  view.for_each_edge([&](EdgeId, const Edge& e) { ++d[e.follower]; });
  return d;
}

bool is_acyclic(const EdgeView& view) {
  const DirectedGraph& g = view.graph();
  const std::size_t n = g.node_count();
  std::vector<std::size_t> pending = in_degrees(view);
  std::vector<NodeId> ready;
  for (NodeId v = 0; v < n; ++v) {
    if (pending[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const NodeId v = ready.back();
    ready.pop_back();
    ++visited;
    for (EdgeId e = g.out_begin(v); e < g.out_end(v); ++e) {
      if (!view.contains(e)) continue;
      const NodeId w = g.edge(e).followee;
      if (--pending[w] == 0) ready.push_back(w);
    }
  }
  return visited == n;
}

}  // namespace linkscope
