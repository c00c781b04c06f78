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

#include <algorithm>
#include <numeric>

#include "linkscope/error.hpp"
#include "linkscope/random.hpp"

namespace linkscope {
namespace {

struct MethodInfo {
  ScoreMethod method;
  std::string_view name;
};

constexpr MethodInfo kMethodNames[] = {
    {ScoreMethod::kLes, "LES"},
    {ScoreMethod::kInDeg, "InDeg"},
    {ScoreMethod::kNetMelt, "NetMelt"},
    {ScoreMethod::kEdgeBetweenness, "EdgeBetweenness"},
    {ScoreMethod::kNonLesBet, "NoN-LES-Bet"},
    {ScoreMethod::kNonLesWit, "NoN-LES-Wit"},
    {ScoreMethod::kNonInDegBet, "NoN-InDeg-Bet"},
    {ScoreMethod::kNonInDegWit, "NoN-InDeg-Wit"},
    {ScoreMethod::kNonNetMeltBet, "NoN-NetMelt-Bet"},
    {ScoreMethod::kNonNetMeltWit, "NoN-NetMelt-Wit"},
};

enum class VectorKind { kLeftEigen, kInDegree, kLeftRightEigen };
enum class ViewKind { kFull, kBetween, kWithin };

struct Recipe {
  VectorKind vectors;
  ViewKind view;
};

Recipe recipe_for(ScoreMethod method) {
  switch (method) {
    case ScoreMethod::kLes:
      return {VectorKind::kLeftEigen, ViewKind::kFull};
    case ScoreMethod::kInDeg:
      return {VectorKind::kInDegree, ViewKind::kFull};
    case ScoreMethod::kNetMelt:
      return {VectorKind::kLeftRightEigen, ViewKind::kFull};
    case ScoreMethod::kNonLesBet:
      return {VectorKind::kLeftEigen, ViewKind::kBetween};
    case ScoreMethod::kNonLesWit:
      return {VectorKind::kLeftEigen, ViewKind::kWithin};
    case ScoreMethod::kNonInDegBet:
      return {VectorKind::kInDegree, ViewKind::kBetween};
    case ScoreMethod::kNonInDegWit:
      return {VectorKind::kInDegree, ViewKind::kWithin};
    case ScoreMethod::kNonNetMeltBet:
      return {VectorKind::kLeftRightEigen, ViewKind::kBetween};
    case ScoreMethod::kNonNetMeltWit:
      return {VectorKind::kLeftRightEigen, ViewKind::kWithin};
    case ScoreMethod::kEdgeBetweenness:
      break;
  }
  throw InputError("no product-form recipe for " + std::string(method_name(method)));
}

// Descending score, then canonical edge order (which is (i, j) ascending).
struct RankOrder {
  const std::vector<double>* scores;
  bool operator()(EdgeId a, EdgeId b) const {
    const double sa = (*scores)[a];
    const double sb = (*scores)[b];
    if (sa != sb) return sa > sb;
    return a < b;
  }
};

}  // namespace

std::string_view method_name(ScoreMethod method) {
  for (const auto& info : kMethodNames) {
    if (info.method == method) return info.name;
  }
  return "unknown";
}

std::optional<ScoreMethod> parse_method(std::string_view name) {
  for (const auto& info : kMethodNames) {
    if (info.name == name) return info.method;
  }
  return std::nullopt;
}

bool requires_partition(ScoreMethod method) {
  switch (method) {
    case ScoreMethod::kNonLesBet:
    case ScoreMethod::kNonLesWit:
    case ScoreMethod::kNonInDegBet:
    case ScoreMethod::kNonInDegWit:
    case ScoreMethod::kNonNetMeltBet:
    case ScoreMethod::kNonNetMeltWit:
      return true;
    default:
      return false;
  }
}

std::string QualityFlags::to_string() const {
  std::string out;
  if (nilpotent_fallback) out += "nilpotent_fallback";
  if (unconverged) {
    if (!out.empty()) out += ';';
    out += "unconverged";
  }
  return out;
}

void QualityFlags::merge(const EigenResult& r) {
  if (r.status == EigenStatus::kNilpotentOrZero) nilpotent_fallback = true;
  if (r.status == EigenStatus::kUnconverged) unconverged = true;
}

LinkScores score_links(ScoreMethod method, const DirectedGraph& graph, const NoNPartition* partition,
                       const SpectralConfig& cfg) {
  if (method == ScoreMethod::kEdgeBetweenness) return edge_betweenness(graph);
  if (requires_partition(method) && partition == nullptr) {
    throw InputError(std::string(method_name(method)) + " requires a network partition");
  }

  const Recipe recipe = recipe_for(method);
  EdgeView view(graph);
  if (recipe.view != ViewKind::kFull) {
    ClassifiedEdges classes = classify_edges(graph, *partition);
    view = recipe.view == ViewKind::kBetween ? classes.between : classes.within;
  }

  LinkScores out;
  out.method = method;
  switch (recipe.vectors) {
    case VectorKind::kInDegree: {
      const auto d = in_degrees(view);
      out.source_vector.assign(d.begin(), d.end());
      out.target_vector = out.source_vector;
      break;
    }
    case VectorKind::kLeftEigen: {
      EigenResult y = leading_left_eigenpair(view, cfg);
      out.flags.merge(y);
      out.source_vector = std::move(y.vector);
      out.target_vector = out.source_vector;
      break;
    }
    case VectorKind::kLeftRightEigen: {
      EigenResult y = leading_left_eigenpair(view, cfg);
      EigenResult z = leading_right_eigenpair(view, cfg);
      out.flags.merge(y);
      out.flags.merge(z);
      out.source_vector = std::move(y.vector);
      out.target_vector = std::move(z.vector);
      break;
    }
  }

  const std::size_t m = graph.edge_count();
  out.scores.resize(m);
  for (EdgeId e = 0; e < m; ++e) {
    const Edge edge = graph.edge(e);
    out.scores[e] = out.source_vector[edge.follower] * out.target_vector[edge.followee];
  }
  return out;
}

LinkScores edge_betweenness(const DirectedGraph& graph) {
  const std::size_t n = graph.node_count();
  const std::size_t m = graph.edge_count();
  LinkScores out;
  out.method = ScoreMethod::kEdgeBetweenness;
  out.scores.assign(m, 0.0);

  std::vector<long> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<NodeId> order;
  order.reserve(n);

  // In A^T an edge (i, j) is the arc j -> i, so a BFS step from v walks to
  // v's followers.
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (NodeId w : graph.followers(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (std::size_t k = order.size(); k-- > 0;) {
      const NodeId w = order[k];
      // Predecessors of w on shortest paths are nodes v that w follows with
      // dist[v] == dist[w] - 1.
      for (EdgeId e = graph.out_begin(w); e < graph.out_end(w); ++e) {
        const NodeId v = graph.edge(e).followee;
        if (dist[v] >= 0 && dist[v] + 1 == dist[w]) {
          const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
          out.scores[e] += c;
          delta[v] += c;
        }
      }
    }
  }
  return out;
}

RemovalSet top_q(const DirectedGraph& graph, const LinkScores& scores, std::size_t q) {
  const std::size_t m = graph.edge_count();
  if (scores.scores.size() != m) {
    throw InputError("score vector has " + std::to_string(scores.scores.size()) +
                     " entries for a graph with " + std::to_string(m) + " edges");
  }
  if (q > m) {
    throw InputError("q = " + std::to_string(q) + " exceeds the edge count " + std::to_string(m));
  }
  std::vector<EdgeId> ids(m);
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(q), ids.end(),
                    RankOrder{&scores.scores});
  std::vector<ScoredEdge> entries;
  entries.reserve(q);
  for (std::size_t k = 0; k < q; ++k) {
    entries.push_back({ids[k], graph.edge(ids[k]), scores.scores[ids[k]]});
  }
  return RemovalSet(std::move(entries));
}

RemovalSet random_removal(const DirectedGraph& graph, std::size_t q, std::uint64_t seed) {
  const std::size_t m = graph.edge_count();
  if (q > m) {
    throw InputError("q = " + std::to_string(q) + " exceeds the edge count " + std::to_string(m));
  }
  std::vector<EdgeId> ids(m);
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  CounterStream rng(seed, 0x72616e64ULL);
  std::vector<ScoredEdge> entries;
  entries.reserve(q);
  for (std::size_t k = 0; k < q; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(rng.bounded(m - k));
    std::swap(ids[k], ids[pick]);
    entries.push_back({ids[k], graph.edge(ids[k]), 0.0});
  }
  return RemovalSet(std::move(entries));
}

std::size_t auto_q(const DirectedGraph& graph, const LinkScores& scores) {
  const std::size_t m = graph.edge_count();
  if (m == 0) return 0;
  const RemovalSet ranked = top_q(graph, scores, m);
  double sum = 0.0;
  double best = -1.0;
  std::vector<double> means(m);
  for (std::size_t k = 0; k < m; ++k) {
    sum += ranked[k].score;
    means[k] = sum / static_cast<double>(k + 1);
    best = std::max(best, means[k]);
  }
  std::size_t q = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (means[k] >= best * (1.0 - 1e-12)) q = k + 1;
  }
  return q;
}

}  // namespace linkscope
