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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "linkscope/graph.hpp"

namespace linkscope {

// Binary state r_t: 1 if the user has posted or retweeted so far.
using StateVector = std::vector<std::uint8_t>;

// A recorded cascade. frames[k] lists the links activated in frame
// first_frame + k, each as (retweeter, source); the retweeter follows the
// source.
struct PropagationTrace {
  std::vector<NodeId> seeds;
  std::vector<std::vector<Edge>> frames;
  std::int64_t first_frame = 0;

  std::size_t frame_count() const { return frames.size(); }
};

// Throws InputError naming the first frame/link that is not a graph edge or
// a seed that is out of range.
void validate_trace(const DirectedGraph& graph, const PropagationTrace& trace);

StateVector seed_state(std::size_t node_count, std::span<const NodeId> seeds);
std::size_t active_count(const StateVector& r);

struct StepResult {
  StateVector next;
  StateVector increment;
};

// increment = T_B(A_{t+1} r), next = T_B(r + increment). Every link reads the
// state at the start of the frame.
StepResult threshold_step(std::span<const Edge> links, const StateVector& r);

struct NonStepResult {
  StateVector next;
  StateVector between_increment;
  StateVector within_increment;
};

// next = T_B(r + T_B(A_bet r) + T_B(A_wit r)).
NonStepResult non_threshold_step(std::span<const Edge> between_links, std::span<const Edge> within_links,
                                 const StateVector& r);

struct ReplayResult {
  double reachability = 1.0;
  std::size_t active = 0;    // active users at the last frame under removal
  std::size_t baseline = 0;  // n0: active users with no removal
  StateVector final_state;
};

// Replays the trace with links in `removal` suppressed. Seeds always count.
// reachability = active / n0. Throws InputError for links outside the graph
// or a trace without seeds.
ReplayResult replay(const DirectedGraph& graph, const PropagationTrace& trace, const RemovalSet& removal);
double replay_trace(const DirectedGraph& graph, const PropagationTrace& trace, const RemovalSet& removal);

inline constexpr double kTrivalencyLevels[3] = {1.0, 0.1, 0.01};

struct TrivalencyAssignment {
  std::vector<double> probability;  // canonical edge order
  std::uint64_t seed = 0;
};

// Each edge independently gets 1, 0.1 or 0.01 with equal probability.
TrivalencyAssignment assign_trivalency(const DirectedGraph& graph, std::uint64_t seed);

struct IcmResult {
  double mean_activated = 0.0;
  std::vector<std::uint32_t> per_run;
};

// Independent cascade: when j becomes active each surviving follower link
// (i, j) gets one activation attempt with probability p(i, j). The uniform for
// (run, edge) is counter_hash(seed, run, edge), so runs with different
// removal sets share their coin flips.
IcmResult icm_simulate(const DirectedGraph& graph, std::span<const NodeId> seeds,
                       const TrivalencyAssignment& trivalency, const RemovalSet& removal, std::size_t runs,
                       std::uint64_t seed);

// Single run; returns the final activation state.
StateVector icm_run(const DirectedGraph& graph, std::span<const NodeId> seeds,
                    const TrivalencyAssignment& trivalency, const EdgeMask& removed, std::uint64_t run,
                    std::uint64_t seed);

struct FrameBound {
  std::int64_t frame = 0;
  std::size_t increment = 0;       // ||T_B(A_{t+1} r_t)||_0
  double frame_constant = 0.0;     // C_{t+1}
  double frame_lambda = 0.0;       // lambda_max(A_{t+1})
  std::size_t rank = 0;
  double condition = 1.0;
  bool diagonalizable = true;
  bool skipped = false;            // not diagonalizable; not checked
  bool holds = true;
};

struct BoundReport {
  std::vector<FrameBound> frames;
  double constant = 0.0;  // C = max over checked frames of C_{t+1}
  std::size_t s = 0;
  double lambda_max = 0.0;  // of the full follower graph
  double bound = 0.0;       // C * sqrt(s) * lambda_max
  std::size_t skipped = 0;
  std::size_t violated = 0;

  bool all_hold() const { return violated == 0; }
};

// Increment bound ||T_B(A_{t+1} r_t)||_0 <= C sqrt(s) lambda_max(A) with
// C_{t+1} = ||1^T V|| ||V^-1||_op rank(Sigma) from each frame's dense
// eigendecomposition. s defaults to ||r_F||_0 of the full replay. Frames whose
// matrix is flagged non-diagonalizable are skipped. Throws InputError when n
// exceeds the dense oracle limit.
BoundReport verify_increment_bound(const DirectedGraph& graph, const PropagationTrace& trace,
                                   std::optional<std::size_t> s = std::nullopt);

}  // namespace linkscope
