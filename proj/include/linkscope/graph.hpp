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

// Follower-graph representation. An edge (i, j) means "user i follows user
// j"; events travel from j to i. Edges are stored once in canonical (i, j)
// order and every per-edge quantity in the library is indexed by that order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace linkscope {

using NodeId = std::uint32_t;
using EdgeId = std::size_t;

struct Edge {
  NodeId follower = 0;
  NodeId followee = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

struct BuildReport {
  std::size_t input_pairs = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

// Immutable CSR adjacency with a reverse (followed-by) index.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return targets_.size(); }

  Edge edge(EdgeId e) const { return {sources_[e], targets_[e]}; }

  // Out-edges of i (the users i follows) occupy edge ids
  // [out_begin(i), out_end(i)).
  EdgeId out_begin(NodeId i) const { return out_offsets_[i]; }
  EdgeId out_end(NodeId i) const { return out_offsets_[i + 1]; }
  std::span<const NodeId> followees(NodeId i) const {
    return {targets_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
  }

  // In-edges of j (j's followers), ordered by follower id.
  std::span<const NodeId> followers(NodeId j) const {
    return {rev_sources_.data() + in_offsets_[j], in_offsets_[j + 1] - in_offsets_[j]};
  }
  std::span<const EdgeId> follower_edges(NodeId j) const {
    return {rev_edges_.data() + in_offsets_[j], in_offsets_[j + 1] - in_offsets_[j]};
  }

  std::optional<EdgeId> find_edge(NodeId follower, NodeId followee) const;
  bool has_edge(NodeId follower, NodeId followee) const {
    return find_edge(follower, followee).has_value();
  }

  const BuildReport& build_report() const { return report_; }

 private:
  friend DirectedGraph build_graph(std::span<const Edge>, std::size_t);

  std::size_t node_count_ = 0;
  std::vector<EdgeId> out_offsets_{0};
  std::vector<NodeId> sources_;
  std::vector<NodeId> targets_;
  std::vector<EdgeId> in_offsets_{0};
  std::vector<NodeId> rev_sources_;
  std::vector<EdgeId> rev_edges_;
  BuildReport report_;
};

// Drops self-loops and duplicate pairs. Throws InputError when an id is out
// of range.
DirectedGraph build_graph(std::span<const Edge> pairs, std::size_t node_count);

// Node -> sub-network assignment. Labels are opaque strings interned to
// dense label ids.
class NoNPartition {
 public:
  static constexpr std::uint32_t kUnlabeled = std::numeric_limits<std::uint32_t>::max();

  NoNPartition() = default;
  NoNPartition(std::vector<std::uint32_t> label_ids, std::vector<std::string> names);

  // One label per node, in node order.
  static NoNPartition from_labels(std::span<const std::string> labels);

  std::size_t node_count() const { return labels_.size(); }
  std::size_t network_count() const { return names_.size(); }
  std::uint32_t label(NodeId node) const {
    return node < labels_.size() ? labels_[node] : kUnlabeled;
  }
  const std::string& name(std::uint32_t label_id) const { return names_.at(label_id); }
  std::optional<std::uint32_t> find_label(const std::string& name) const;
  std::vector<NodeId> members(std::uint32_t label_id) const;

 private:
  std::vector<std::uint32_t> labels_;
  std::vector<std::string> names_;
};

// Bitmask over canonical edge order.
class EdgeMask {
 public:
  EdgeMask() = default;
  EdgeMask(std::size_t size, bool value);

  std::size_t size() const { return size_; }
  std::size_t count() const { return count_; }
  bool test(EdgeId e) const { return (words_[e >> 6] >> (e & 63)) & 1U; }
  void set(EdgeId e);
  void reset(EdgeId e);

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
  std::size_t count_ = 0;
};

// A subset of a graph's edges (A, A_bet, A_wit, or a post-removal matrix)
// exposed without copying the adjacency. The parent graph must outlive the
// view. Copies share the mask.
class EdgeView {
 public:
  explicit EdgeView(const DirectedGraph& graph);
  EdgeView(const DirectedGraph& graph, EdgeMask mask);

  const DirectedGraph& graph() const { return *graph_; }
  std::size_t node_count() const { return graph_->node_count(); }
  std::size_t edge_count() const;
  bool contains(EdgeId e) const { return !mask_ || mask_->test(e); }
  bool is_full() const { return !mask_; }

  // out = A x over the view's edges.
  void multiply(std::span<const double> x, std::span<double> out) const;
  // out = A^T x over the view's edges.
  void multiply_transpose(std::span<const double> x, std::span<double> out) const;

  template <typename F>
  void for_each_edge(F&& f) const {
    const std::size_t m = graph_->edge_count();
    for (EdgeId e = 0; e < m; ++e) {
      if (contains(e)) f(e, graph_->edge(e));
    }
  }

  std::vector<EdgeId> edge_ids() const;
  std::vector<Edge> edges() const;
  EdgeMask mask() const;

 private:
  const DirectedGraph* graph_;
  std::shared_ptr<const EdgeMask> mask_;
};

struct ScoredEdge {
  EdgeId id = 0;
  Edge edge;
  double score = 0.0;
};

// Ordered removal set E_R.
class RemovalSet {
 public:
  RemovalSet() = default;
  explicit RemovalSet(std::vector<ScoredEdge> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<ScoredEdge>& entries() const { return entries_; }
  const ScoredEdge& operator[](std::size_t k) const { return entries_[k]; }

  // First q entries.
  RemovalSet prefix(std::size_t q) const;

 private:
  std::vector<ScoredEdge> entries_;
};

struct ClassifiedEdges {
  EdgeView between;
  EdgeView within;
};

// Splits edges by whether follower and followee share a label. Throws
// InputError listing unlabeled nodes.
ClassifiedEdges classify_edges(const DirectedGraph& graph, const NoNPartition& partition);

// View without the removal set. Throws InputError if an entry is not an edge
// of the view.
EdgeView remove_edges(const EdgeView& view, const RemovalSet& removal);
EdgeView remove_edges(const DirectedGraph& graph, const RemovalSet& removal);

std::vector<std::size_t> in_degrees(const EdgeView& view);
std::vector<std::size_t> out_degrees(const EdgeView& view);

// True when the view has no directed cycle, i.e. its adjacency is nilpotent.
bool is_acyclic(const EdgeView& view);

}  // namespace linkscope
