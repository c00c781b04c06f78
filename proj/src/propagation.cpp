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

#include "linkscope/propagation.hpp"

#include <algorithm>
#include <cmath>

#include "linkscope/error.hpp"
#include "linkscope/random.hpp"
#include "linkscope/spectral.hpp"

namespace linkscope {
namespace {

std::size_t state_size_for(std::span<const Edge> links, const StateVector& r) {
  std::size_t n = r.size();
  for (const Edge& e : links) {
    if (e.follower >= n || e.followee >= n) {
      throw InputError("link " + to_string(e) + " references a node outside the state vector");
    }
  }
  return n;
}

}  // namespace

void validate_trace(const DirectedGraph& graph, const PropagationTrace& trace) {
  for (NodeId s : trace.seeds) {
    if (s >= graph.node_count()) {
      throw InputError("seed " + std::to_string(s) + " is outside the graph");
    }
  }
  for (std::size_t k = 0; k < trace.frames.size(); ++k) {
    for (const Edge& e : trace.frames[k]) {
      if (!graph.has_edge(e.follower, e.followee)) {
        throw InputError("frame " + std::to_string(trace.first_frame + static_cast<std::int64_t>(k)) +
                         ": activated link " + to_string(e) + " is not a follower link of the graph");
      }
    }
  }
}

StateVector seed_state(std::size_t node_count, std::span<const NodeId> seeds) {
  StateVector r(node_count, 0);
  for (NodeId s : seeds) {
    if (s >= node_count) throw InputError("seed " + std::to_string(s) + " is outside the graph");
    r[s] = 1;
  }
  return r;
}

std::size_t active_count(const StateVector& r) {
  return static_cast<std::size_t>(std::count(r.begin(), r.end(), std::uint8_t{1}));
}

StepResult threshold_step(std::span<const Edge> links, const StateVector& r) {
  const std::size_t n = state_size_for(links, r);
  StepResult out{r, StateVector(n, 0)};
  for (const Edge& e : links) {
    if (r[e.followee]) out.increment[e.follower] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) out.next[i] = (r[i] | out.increment[i]) ? 1 : 0;
  return out;
}

NonStepResult non_threshold_step(std::span<const Edge> between_links, std::span<const Edge> within_links,
                                 const StateVector& r) {
  StepResult bet = threshold_step(between_links, r);
  StepResult wit = threshold_step(within_links, r);
  NonStepResult out;
  out.next = r;
  for (std::size_t i = 0; i < r.size(); ++i) {
    out.next[i] = (r[i] | bet.increment[i] | wit.increment[i]) ? 1 : 0;
  }
  out.between_increment = std::move(bet.increment);
  out.within_increment = std::move(wit.increment);
  return out;
}

ReplayResult replay(const DirectedGraph& graph, const PropagationTrace& trace, const RemovalSet& removal) {
  validate_trace(graph, trace);
  if (trace.seeds.empty()) throw InputError("trace has no seed posters");

  EdgeMask removed(graph.edge_count(), false);
  for (const ScoredEdge& entry : removal.entries()) {
    const auto id = graph.find_edge(entry.edge.follower, entry.edge.followee);
    if (!id) throw InputError("removal entry " + to_string(entry.edge) + " is not an edge of the graph");
    removed.set(*id);
  }

  const std::size_t n = graph.node_count();
  StateVector intact = seed_state(n, trace.seeds);
  StateVector reduced = intact;
  std::vector<Edge> kept;
  for (const auto& frame : trace.frames) {
    intact = threshold_step(frame, intact).next;
    kept.clear();
    for (const Edge& e : frame) {
      if (!removed.test(*graph.find_edge(e.follower, e.followee))) kept.push_back(e);
    }
    reduced = threshold_step(kept, reduced).next;
  }

  ReplayResult out;
  out.baseline = active_count(intact);
  out.active = active_count(reduced);
  out.reachability = static_cast<double>(out.active) / static_cast<double>(out.baseline);
  out.final_state = std::move(reduced);
  return out;
}

double replay_trace(const DirectedGraph& graph, const PropagationTrace& trace, const RemovalSet& removal) {
  return replay(graph, trace, removal).reachability;
}

TrivalencyAssignment assign_trivalency(const DirectedGraph& graph, std::uint64_t seed) {
  TrivalencyAssignment out;
  out.seed = seed;
  out.probability.resize(graph.edge_count());
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    out.probability[e] = kTrivalencyLevels[to_bounded(counter_hash(seed, 0x74726976ULL, e), 3)];
  }
  return out;
}

StateVector icm_run(const DirectedGraph& graph, std::span<const NodeId> seeds,
                    const TrivalencyAssignment& trivalency, const EdgeMask& removed, std::uint64_t run,
                    std::uint64_t seed) {
  StateVector active = seed_state(graph.node_count(), seeds);
  std::vector<NodeId> frontier;
  for (NodeId v = 0; v < active.size(); ++v) {
    if (active[v]) frontier.push_back(v);
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId j = frontier[head];
    const auto followers = graph.followers(j);
    const auto ids = graph.follower_edges(j);
    for (std::size_t k = 0; k < followers.size(); ++k) {
      const NodeId i = followers[k];
      if (active[i] || removed.test(ids[k])) continue;
      if (to_unit(counter_hash(seed, run, ids[k])) < trivalency.probability[ids[k]]) {
        active[i] = 1;
        frontier.push_back(i);
      }
    }
  }
  return active;
}

IcmResult icm_simulate(const DirectedGraph& graph, std::span<const NodeId> seeds,
                       const TrivalencyAssignment& trivalency, const RemovalSet& removal, std::size_t runs,
                       std::uint64_t seed) {
  if (runs == 0) throw InputError("ICM needs at least one run");
  if (seeds.empty()) throw InputError("ICM needs at least one seed");
  if (trivalency.probability.size() != graph.edge_count()) {
    throw InputError("activation probabilities do not match the graph's edge count");
  }
  EdgeMask removed(graph.edge_count(), false);
  for (const ScoredEdge& entry : removal.entries()) {
    const auto id = graph.find_edge(entry.edge.follower, entry.edge.followee);
    if (!id) throw InputError("removal entry " + to_string(entry.edge) + " is not an edge of the graph");
    removed.set(*id);
  }

  const std::size_t n = graph.node_count();
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<NodeId> frontier;
  frontier.reserve(n);

  IcmResult out;
  out.per_run.resize(runs);
  double total = 0.0;
  for (std::size_t run = 0; run < runs; ++run) {
    // Stamps avoid clearing the state vector between runs.
    const std::uint32_t mark = static_cast<std::uint32_t>(run + 1);
    frontier.clear();
    for (NodeId s : seeds) {
      if (s >= n) throw InputError("seed " + std::to_string(s) + " is outside the graph");
      if (stamp[s] != mark) {
        stamp[s] = mark;
        frontier.push_back(s);
      }
    }
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const NodeId j = frontier[head];
      const auto followers = graph.followers(j);
      const auto ids = graph.follower_edges(j);
      for (std::size_t k = 0; k < followers.size(); ++k) {
        const NodeId i = followers[k];
        if (stamp[i] == mark || removed.test(ids[k])) continue;
        if (to_unit(counter_hash(seed, run, ids[k])) < trivalency.probability[ids[k]]) {
          stamp[i] = mark;
          frontier.push_back(i);
        }
      }
    }
    out.per_run[run] = static_cast<std::uint32_t>(frontier.size());
    total += static_cast<double>(frontier.size());
  }
  out.mean_activated = total / static_cast<double>(runs);
  return out;
}

BoundReport verify_increment_bound(const DirectedGraph& graph, const PropagationTrace& trace,
                                   std::optional<std::size_t> s) {
  const std::size_t n = graph.node_count();
  if (n > kDenseOracleLimit) {
    throw InputError("bound verification refused: n = " + std::to_string(n) + " exceeds limit " +
                     std::to_string(kDenseOracleLimit));
  }
  validate_trace(graph, trace);

  BoundReport report;
  report.lambda_max = dense_spectrum_oracle(EdgeView(graph)).leading_eigenvalue;

  StateVector r = seed_state(n, trace.seeds);
  std::vector<StateVector> states{r};
  for (const auto& frame : trace.frames) {
    r = threshold_step(frame, r).next;
    states.push_back(r);
  }
  report.s = s.value_or(active_count(states.back()));

  for (std::size_t k = 0; k < trace.frames.size(); ++k) {
    FrameBound fb;
    fb.frame = trace.first_frame + static_cast<std::int64_t>(k);
    fb.increment = active_count(threshold_step(trace.frames[k], states[k]).increment);

    DenseMatrix a(n, 0.0);
    for (const Edge& e : trace.frames[k]) a(e.follower, e.followee) = 1.0;
    const DenseSpectrum spec = dense_spectrum(a);
    fb.frame_lambda = spec.leading_eigenvalue;
    fb.rank = spec.rank;
    fb.condition = spec.condition;
    fb.diagonalizable = spec.diagonalizable;
    fb.skipped = !spec.diagonalizable;
    if (!fb.skipped) {
      const ComplexMatrix& v = spec.eigenvectors;
      double ones_v = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        Complex col{};
        for (std::size_t i = 0; i < n; ++i) col += v(i, c);
        ones_v += std::norm(col);
      }
      ComplexMatrix inv;
      invert(v, inv, 0.0);
      fb.frame_constant = std::sqrt(ones_v) * spectral_norm(inv) * static_cast<double>(spec.rank);
      report.constant = std::max(report.constant, fb.frame_constant);
    } else {
      ++report.skipped;
    }
    report.frames.push_back(fb);
  }

  report.bound = report.constant * std::sqrt(static_cast<double>(report.s)) * report.lambda_max;
  for (FrameBound& fb : report.frames) {
    if (fb.skipped) continue;
    fb.holds = static_cast<double>(fb.increment) <= report.bound * (1.0 + 1e-12);
    if (!fb.holds) ++report.violated;
  }
  return report;
}

}  // namespace linkscope
