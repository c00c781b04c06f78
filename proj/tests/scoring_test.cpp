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

#include "linkscope/scoring.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "linkscope/error.hpp"
#include "test_util.hpp"

namespace linkscope {
namespace {

using testing::angle;
using testing::graph_of;
using testing::random_graph;

LinkScores with_scores(std::vector<double> s) {
  LinkScores out;
  out.scores = std::move(s);
  return out;
}

// Betweenness on A^T by explicit enumeration of every shortest path, with
// distances from Floyd-Warshall.
std::vector<double> betweenness_oracle(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  constexpr int kInf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  // Arc j -> i in A^T for each edge (i, j).
  for (EdgeId e = 0; e < g.edge_count(); ++e) d[g.edge(e).followee][g.edge(e).follower] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);

  std::vector<double> out(g.edge_count(), 0.0);
  std::vector<EdgeId> path;
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t || d[s][t] >= kInf) continue;
      std::vector<std::vector<EdgeId>> paths;
      std::function<void(NodeId)> walk = [&](NodeId v) {
        if (v == t) {
          paths.push_back(path);
          return;
        }
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
          const Edge edge = g.edge(e);
          if (edge.followee != v) continue;
          const NodeId w = edge.follower;
          if (d[s][v] + 1 == d[s][w] && d[s][w] + d[w][t] == d[s][t]) {
            path.push_back(e);
            walk(w);
            path.pop_back();
          }
        }
      };
      walk(s);
      for (const auto& p : paths)
        for (EdgeId e : p) out[e] += 1.0 / static_cast<double>(paths.size());
    }
  }
  return out;
}

TEST(Methods, NamesRoundTrip) {
  for (ScoreMethod m : kAllScoreMethods) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_FALSE(parse_method("PageRank").has_value());
  EXPECT_TRUE(requires_partition(ScoreMethod::kNonLesBet));
  EXPECT_FALSE(requires_partition(ScoreMethod::kEdgeBetweenness));
}

TEST(ScoreLinks, InDegreeExample) {
  const DirectedGraph g = graph_of(3, {{0, 2}, {1, 2}, {2, 0}});
  const LinkScores s = score_links(ScoreMethod::kInDeg, g, nullptr);
  EXPECT_EQ(s.source_vector, (std::vector<double>{1, 0, 2}));
  // Canonical order (0,2), (1,2), (2,0).
  EXPECT_EQ(s.scores, (std::vector<double>{2, 0, 2}));
}

TEST(ScoreLinks, LesOnThreeCycle) {
  const DirectedGraph g = graph_of(3, {{0, 1}, {1, 2}, {2, 0}});
  const LinkScores s = score_links(ScoreMethod::kLes, g, nullptr);
  for (double v : s.scores) EXPECT_NEAR(v, 1.0 / 3.0, 1e-9);
  EXPECT_FALSE(s.flags.degraded());
}

TEST(ScoreLinks, NonMethodNeedsPartition) {
  const DirectedGraph g = graph_of(3, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_THROW(score_links(ScoreMethod::kNonLesWit, g, nullptr), InputError);
}

TEST(ScoreLinks, ProductFormIsExact) {
  const DirectedGraph g = random_graph(30, 0.12, 5);
  std::vector<std::string> labels;
  for (int v = 0; v < 30; ++v) labels.push_back(v % 2 ? "a" : "b");
  const NoNPartition p = NoNPartition::from_labels(labels);
  for (ScoreMethod m : kAllScoreMethods) {
    if (m == ScoreMethod::kEdgeBetweenness) continue;
    const LinkScores s = score_links(m, g, &p);
    ASSERT_EQ(s.scores.size(), g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge edge = g.edge(e);
      EXPECT_EQ(s.scores[e], s.source_vector[edge.follower] * s.target_vector[edge.followee]);
      EXPECT_GE(s.scores[e], 0.0);
      EXPECT_TRUE(std::isfinite(s.scores[e]));
    }
  }
}

TEST(ScoreLinks, NetMeltUsesOracleEigenvectors) {
  const DirectedGraph g = random_graph(30, 0.12, 12);
  const LinkScores net = score_links(ScoreMethod::kNetMelt, g, nullptr);
  const DenseSpectrum left = dense_spectrum_oracle(EdgeView(g), Side::kLeft);
  const DenseSpectrum right = dense_spectrum_oracle(EdgeView(g), Side::kRight);
  ASSERT_GT(left.leading_eigenvalue, 0.0);
  EXPECT_LT(angle(net.source_vector, left.leading_vector), 1e-6);
  EXPECT_LT(angle(net.target_vector, right.leading_vector), 1e-6);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge edge = g.edge(e);
    const double want = std::abs(left.leading_vector[edge.follower] * right.leading_vector[edge.followee]);
    EXPECT_NEAR(net.scores[e], want, 1e-6);
  }
  const LinkScores les = score_links(ScoreMethod::kLes, g, nullptr);
  EXPECT_NE(les.scores, net.scores);
}

TEST(ScoreLinks, NonBetweenVectorsComeFromBetweenView) {
  const DirectedGraph g = random_graph(40, 0.15, 21);
  std::vector<std::string> labels;
  for (int v = 0; v < 40; ++v) labels.push_back(v < 20 ? "en" : "ja");
  const NoNPartition p = NoNPartition::from_labels(labels);
  const ClassifiedEdges c = classify_edges(g, p);
  const LinkScores s = score_links(ScoreMethod::kNonNetMeltBet, g, &p);
  const DenseSpectrum left = dense_spectrum_oracle(c.between, Side::kLeft);
  const DenseSpectrum right = dense_spectrum_oracle(c.between, Side::kRight);
  ASSERT_GT(left.leading_eigenvalue, 0.0);
  EXPECT_LT(angle(s.source_vector, left.leading_vector), 1e-6);
  EXPECT_LT(angle(s.target_vector, right.leading_vector), 1e-6);
}

TEST(ScoreLinks, NilpotentViewIsFlagged) {
  // Only one direction across groups: the between view is acyclic.
  const DirectedGraph g = graph_of(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {2, 0}, {3, 1}});
  const NoNPartition p({0, 0, 1, 1}, {"a", "b"});
  const LinkScores s = score_links(ScoreMethod::kNonLesBet, g, &p);
  EXPECT_TRUE(s.flags.nilpotent_fallback);
  EXPECT_EQ(s.flags.to_string(), "nilpotent_fallback");
  EXPECT_FALSE(score_links(ScoreMethod::kNonLesWit, g, &p).flags.degraded());
}

TEST(Betweenness, PathByHand) {
  // a -> b -> c in A^T is edges (b, a) and (c, b).
  const DirectedGraph g = graph_of(3, {{1, 0}, {2, 1}});
  const LinkScores s = edge_betweenness(g);
  EXPECT_EQ(s.scores, (std::vector<double>{2.0, 2.0}));
}

TEST(Betweenness, CycleIsSymmetric) {
  const DirectedGraph g = graph_of(3, {{0, 1}, {1, 2}, {2, 0}});
  const LinkScores s = edge_betweenness(g);
  EXPECT_EQ(s.scores[0], s.scores[1]);
  EXPECT_EQ(s.scores[1], s.scores[2]);
  EXPECT_EQ(s.scores[0], 3.0);
}

TEST(Betweenness, MatchesPathEnumerationOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const DirectedGraph g = random_graph(20, 0.12, 600 + seed);
    const LinkScores s = edge_betweenness(g);
    const std::vector<double> want = betweenness_oracle(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_NEAR(s.scores[e], want[e], 1e-9) << seed;
  }
}

TEST(Betweenness, TreeTotalEqualsPathLengths) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const NodeId n = 30;
    std::vector<Edge> pairs;
    for (NodeId v = 1; v < n; ++v) {
      const NodeId parent = static_cast<NodeId>(rng() % v);
      pairs.push_back({v, parent});
    }
    const DirectedGraph g = build_graph(pairs, n);
    double total = 0.0;
    for (double x : edge_betweenness(g).scores) total += x;
    // Each node is reached from each of its ancestors, once per edge between.
    double lengths = 0.0;
    for (NodeId v = 1; v < n; ++v) {
      std::size_t depth = 0;
      for (NodeId u = v; u != 0; u = g.followees(u)[0]) ++depth;
      lengths += static_cast<double>(depth * (depth + 1) / 2);
    }
    EXPECT_DOUBLE_EQ(total, lengths);
  }
}

TEST(TopQ, Examples) {
  const DirectedGraph g = graph_of(3, {{0, 1}, {1, 2}});
  RemovalSet r = top_q(g, with_scores({0.5, 0.3}), 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].edge, (Edge{0, 1}));
  r = top_q(g, with_scores({0.3, 0.5}), 1);
  EXPECT_EQ(r[0].edge, (Edge{1, 2}));
  r = top_q(g, with_scores({0.4, 0.4}), 1);
  EXPECT_EQ(r[0].edge, (Edge{0, 1}));
  EXPECT_THROW(top_q(g, with_scores({0.4, 0.4}), 3), InputError);
  EXPECT_THROW(top_q(g, with_scores({0.4}), 1), InputError);
  EXPECT_EQ(top_q(g, with_scores({0.4, 0.4}), 0).size(), 0u);
}

TEST(TopQ, FullSelectionIsNonIncreasing) {
  const DirectedGraph g = random_graph(30, 0.2, 2);
  const LinkScores s = score_links(ScoreMethod::kInDeg, g, nullptr);
  const RemovalSet r = top_q(g, s, g.edge_count());
  ASSERT_EQ(r.size(), g.edge_count());
  for (std::size_t k = 1; k < r.size(); ++k) {
    EXPECT_GE(r[k - 1].score, r[k].score);
    if (r[k - 1].score == r[k].score) EXPECT_LT(r[k - 1].edge, r[k].edge);
  }
}

TEST(TopQ, PrefixProperty) {
  const DirectedGraph g = random_graph(40, 0.1, 8);
  const LinkScores s = score_links(ScoreMethod::kInDeg, g, nullptr);
  const RemovalSet all = top_q(g, s, g.edge_count());
  for (std::size_t q : {0, 1, 5, 17, 60}) {
    const RemovalSet part = top_q(g, s, q);
    for (std::size_t k = 0; k < q; ++k) EXPECT_EQ(part[k].id, all[k].id);
  }
}

TEST(TopQ, ScaleInvariance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  const DirectedGraph g = random_graph(30, 0.15, 4);
  const LinkScores s = score_links(ScoreMethod::kLes, g, nullptr);
  const RemovalSet base = top_q(g, s, 25);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = scale(rng);
    const double b = scale(rng);
    LinkScores scaled = s;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge edge = g.edge(e);
      scaled.scores[e] = (a * s.source_vector[edge.follower]) * (b * s.target_vector[edge.followee]);
    }
    const RemovalSet r = top_q(g, scaled, 25);
    std::set<EdgeId> x, y;
    for (std::size_t k = 0; k < 25; ++k) {
      x.insert(base[k].id);
      y.insert(r[k].id);
    }
    EXPECT_EQ(x, y);
  }
}

TEST(RandomRemoval, Basics) {
  const DirectedGraph g = random_graph(20, 0.2, 1);
  EXPECT_EQ(random_removal(g, 0, 5).size(), 0u);
  const RemovalSet all = random_removal(g, g.edge_count(), 5);
  std::set<EdgeId> ids;
  for (const auto& e : all.entries()) ids.insert(e.id);
  EXPECT_EQ(ids.size(), g.edge_count());
  const RemovalSet a = random_removal(g, 10, 99);
  const RemovalSet b = random_removal(g, 10, 99);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(a[k].id, b[k].id);
  EXPECT_THROW(random_removal(g, g.edge_count() + 1, 5), InputError);
}

TEST(RandomRemoval, PrefixConsistentAcrossQ) {
  const DirectedGraph g = random_graph(20, 0.2, 1);
  const RemovalSet big = random_removal(g, 30, 7);
  const RemovalSet small = random_removal(g, 12, 7);
  for (std::size_t k = 0; k < 12; ++k) EXPECT_EQ(small[k].id, big[k].id);
}

TEST(RandomRemoval, RoughlyUniform) {
  const DirectedGraph g = graph_of(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  std::vector<int> hits(5, 0);
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) ++hits[random_removal(g, 1, static_cast<std::uint64_t>(t))[0].id];
  // Each edge expected 4000 times, sd about 57.
  for (int h : hits) EXPECT_NEAR(h, trials / 5, 300);
}

TEST(AutoQ, PicksBestMeanPrefix) {
  const DirectedGraph g = graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_EQ(auto_q(g, with_scores({5, 1, 5, 2})), 2u);
  EXPECT_EQ(auto_q(g, with_scores({1, 1, 1, 1})), 4u);
  EXPECT_EQ(auto_q(g, with_scores({9, 1, 2, 3})), 1u);
}

}  // namespace
}  // namespace linkscope
