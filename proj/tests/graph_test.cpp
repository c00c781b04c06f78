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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "linkscope/error.hpp"
#include "test_util.hpp"

namespace linkscope {
namespace {

using testing::dense_of;
using testing::graph_of;
using testing::random_graph;

TEST(BuildGraph, TwoEdgesKeptInCanonicalOrder) {
  const DirectedGraph g = graph_of(3, {{1, 2}, {0, 1}});
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edge(0), (Edge{0, 1}));
  EXPECT_EQ(g.edge(1), (Edge{1, 2}));
}

TEST(BuildGraph, DropsSelfLoopsAndDuplicates) {
  const DirectedGraph g = graph_of(3, {{0, 0}, {0, 1}, {0, 1}, {2, 1}, {1, 1}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.build_report().input_pairs, 5u);
  EXPECT_EQ(g.build_report().self_loops_dropped, 2u);
  EXPECT_EQ(g.build_report().duplicates_dropped, 1u);
}

TEST(BuildGraph, OutOfRangeIdNamesThePair) {
  try {
    graph_of(3, {{0, 1}, {2, 5}});
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("pair 1 (2, 5)"), std::string::npos) << e.what();
  }
}

TEST(BuildGraph, EmptyGraph) {
  const DirectedGraph g = graph_of(4, {});
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_TRUE(is_acyclic(EdgeView(g)));
}

TEST(BuildGraph, AdjacencyAccessorsAgree) {
  const DirectedGraph g = random_graph(40, 0.15, 3);
  std::size_t seen = 0;
  for (NodeId j = 0; j < g.node_count(); ++j) {
    const auto followers = g.followers(j);
    const auto ids = g.follower_edges(j);
    ASSERT_EQ(followers.size(), ids.size());
    for (std::size_t k = 0; k < followers.size(); ++k) {
      if (k > 0) EXPECT_LT(followers[k - 1], followers[k]);
      EXPECT_EQ(g.edge(ids[k]), (Edge{followers[k], j}));
      ++seen;
    }
  }
  EXPECT_EQ(seen, g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    EXPECT_EQ(g.find_edge(g.edge(e).follower, g.edge(e).followee), e);
  }
  EXPECT_FALSE(g.find_edge(0, 0).has_value());
  EXPECT_FALSE(g.find_edge(0, 400).has_value());
}

TEST(Classify, MixedLabels) {
  const DirectedGraph g = graph_of(3, {{0, 1}, {1, 2}});
  const std::vector<std::string> labels{"en", "en", "ja"};
  const ClassifiedEdges c = classify_edges(g, NoNPartition::from_labels(labels));
  EXPECT_EQ(c.within.edges(), (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(c.between.edges(), (std::vector<Edge>{{1, 2}}));
}

TEST(Classify, AllLabelsEqual) {
  const DirectedGraph g = random_graph(20, 0.2, 5);
  const std::vector<std::string> labels(20, "x");
  const ClassifiedEdges c = classify_edges(g, NoNPartition::from_labels(labels));
  EXPECT_EQ(c.between.edge_count(), 0u);
  EXPECT_EQ(c.within.edge_count(), g.edge_count());
}

TEST(Classify, UnlabeledNodeIsAnError) {
  const DirectedGraph g = graph_of(3, {{0, 1}, {1, 2}});
  const NoNPartition p({0, 0}, {"en"});
  try {
    classify_edges(g, p);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos) << e.what();
  }
}

TEST(Classify, ViewsPartitionEdges) {
  const DirectedGraph g = random_graph(30, 0.2, 9);
  std::vector<std::string> labels;
  for (int v = 0; v < 30; ++v) labels.push_back(v % 3 == 0 ? "a" : v % 3 == 1 ? "b" : "c");
  const NoNPartition p = NoNPartition::from_labels(labels);
  const ClassifiedEdges c = classify_edges(g, p);
  EXPECT_EQ(c.between.edge_count() + c.within.edge_count(), g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    EXPECT_NE(c.between.contains(e), c.within.contains(e));
    const Edge edge = g.edge(e);
    EXPECT_EQ(c.within.contains(e), p.label(edge.follower) == p.label(edge.followee));
  }
}

TEST(EdgeView, MatvecMatchesDense) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DirectedGraph g = random_graph(25, 0.2, seed);
    const DenseMatrix a = dense_of(g);
    std::vector<double> x(25);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = 0.3 + 0.1 * static_cast<double>(k % 7);
    std::vector<double> ax(25), atx(25);
    EdgeView(g).multiply(x, ax);
    EdgeView(g).multiply_transpose(x, atx);
    for (std::size_t r = 0; r < 25; ++r) {
      double want = 0.0, want_t = 0.0;
      for (std::size_t c = 0; c < 25; ++c) {
        want += a(r, c) * x[c];
        want_t += a(c, r) * x[c];
      }
      EXPECT_DOUBLE_EQ(ax[r], want);
      EXPECT_DOUBLE_EQ(atx[r], want_t);
    }
  }
}

TEST(EdgeView, BetweenPlusWithinIsFull) {
  const DirectedGraph g = random_graph(30, 0.25, 17);
  std::vector<std::string> labels;
  for (int v = 0; v < 30; ++v) labels.push_back(v < 12 ? "a" : "b");
  const ClassifiedEdges c = classify_edges(g, NoNPartition::from_labels(labels));
  std::vector<double> x(30);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = 1.0 / (1.0 + static_cast<double>(k));
  std::vector<double> full(30), bet(30), wit(30);
  EdgeView(g).multiply_transpose(x, full);
  c.between.multiply_transpose(x, bet);
  c.within.multiply_transpose(x, wit);
  for (std::size_t k = 0; k < 30; ++k) EXPECT_NEAR(bet[k] + wit[k], full[k], 1e-15);
}

TEST(RemoveEdges, ComplementView) {
  const DirectedGraph g = random_graph(20, 0.3, 21);
  std::vector<ScoredEdge> picked;
  for (EdgeId e = 0; e < g.edge_count(); e += 3) picked.push_back({e, g.edge(e), 0.0});
  const EdgeView rest = remove_edges(g, RemovalSet(picked));
  EXPECT_EQ(rest.edge_count(), g.edge_count() - picked.size());
  for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_EQ(rest.contains(e), e % 3 != 0);
  EXPECT_EQ(remove_edges(g, RemovalSet()).edge_count(), g.edge_count());
}

TEST(RemoveEdges, NonEdgeIsAnError) {
  const DirectedGraph g = graph_of(3, {{0, 1}});
  EXPECT_THROW(remove_edges(g, RemovalSet({{0, Edge{1, 0}, 0.0}})), InputError);
  // Removing twice from a view: the second removal no longer sees the edge.
  const EdgeView once = remove_edges(g, RemovalSet({{0, Edge{0, 1}, 0.0}}));
  EXPECT_THROW(remove_edges(once, RemovalSet({{0, Edge{0, 1}, 0.0}})), InputError);
}

TEST(EdgeMask, CountsBits) {
  EdgeMask m(130, false);
  EXPECT_EQ(m.count(), 0u);
  m.set(0);
  m.set(129);
  m.set(129);
  EXPECT_EQ(m.count(), 2u);
  m.reset(0);
  EXPECT_EQ(m.count(), 1u);
  EXPECT_TRUE(m.test(129));
  EdgeMask full(130, true);
  EXPECT_EQ(full.count(), 130u);
}

TEST(Degrees, InAndOut) {
  const DirectedGraph g = graph_of(4, {{0, 1}, {2, 1}, {3, 1}, {1, 0}});
  EXPECT_EQ(in_degrees(EdgeView(g)), (std::vector<std::size_t>{1, 3, 0, 0}));
  EXPECT_EQ(out_degrees(EdgeView(g)), (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(Acyclic, DetectsCycles) {
  EXPECT_TRUE(is_acyclic(EdgeView(graph_of(3, {{1, 0}, {2, 1}, {2, 0}}))));
  EXPECT_FALSE(is_acyclic(EdgeView(graph_of(3, {{1, 0}, {2, 1}, {0, 2}}))));
  const DirectedGraph two = graph_of(2, {{0, 1}, {1, 0}});
  EXPECT_FALSE(is_acyclic(EdgeView(two)));
  EXPECT_TRUE(is_acyclic(remove_edges(two, RemovalSet({{0, Edge{0, 1}, 0.0}}))));
}

}  // namespace
}  // namespace linkscope
