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

#include "linkscope/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "linkscope/error.hpp"
#include "linkscope/random.hpp"

namespace linkscope {
namespace {

constexpr std::uint64_t kBaselineStream = 0x626173656c696e65ULL;

// ICM counts are divided by the intact-graph mean so both modes report 1 at q=0.
double reachability_of(const SweepInputs& in, const SweepConfig& cfg, const RemovalSet& removal,
                       double icm_scale) {
  if (cfg.mode == PropagationMode::kReplay) {
    return replay_trace(*in.graph, *in.trace, removal);
  }
  return icm_simulate(*in.graph, in.seeds, *in.trivalency, removal, cfg.icm_runs, cfg.seed).mean_activated /
         icm_scale;
}

double between_fraction(const NoNPartition& partition, const RemovalSet& removal) {
  if (removal.empty()) return 0.0;
  std::size_t between = 0;
  for (const ScoredEdge& e : removal.entries()) {
    if (partition.label(e.edge.follower) != partition.label(e.edge.followee)) ++between;
  }
  return static_cast<double>(between) / static_cast<double>(removal.size());
}

}  // namespace

std::string to_string(PropagationMode mode) {
  return mode == PropagationMode::kReplay ? "replay" : "icm";
}

std::optional<PropagationMode> parse_mode(const std::string& name) {
  if (name == "replay") return PropagationMode::kReplay;
  if (name == "icm") return PropagationMode::kIcm;
  return std::nullopt;
}

std::vector<std::size_t> resolve_q_grid(const SweepConfig& cfg, std::size_t edge_count) {
  std::vector<std::size_t> grid;
  for (std::size_t q : cfg.q_counts) {
    if (q > edge_count) {
      throw InputError("q = " + std::to_string(q) + " exceeds the edge count " + std::to_string(edge_count));
    }
    grid.push_back(q);
  }
  for (double f : cfg.q_fractions) {
    if (!(f >= 0.0 && f <= 1.0)) throw InputError("q fraction " + std::to_string(f) + " is outside [0, 1]");
    std::size_t q = 0;
    if (f > 0.0 && edge_count > 0) {
      q = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(f * static_cast<double>(edge_count))));
      q = std::min(q, edge_count);
    }
    grid.push_back(q);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double efficiency(double r_rand, double r_f) {
  if (r_rand < 0.0 || r_f < 0.0) {
    throw InputError("efficiency needs nonnegative reachability values");
  }
  if (r_rand == 0.0) return 0.0;
  return (r_rand - r_f) / r_rand;
}

ExperimentReport run_sweep(const SweepInputs& in, const SweepConfig& cfg) {
  if (in.graph == nullptr) throw InputError("sweep needs a graph");
  if (cfg.baseline_trials < 1) throw InputError("baseline trials must be at least 1");
  if (cfg.methods.empty()) throw InputError("sweep needs at least one method");
  for (ScoreMethod method : cfg.methods) {
    if (requires_partition(method) && in.partition == nullptr) {
      throw InputError(std::string(method_name(method)) + " requires a network partition");
    }
  }
  if (cfg.mode == PropagationMode::kReplay) {
    if (in.trace == nullptr) throw InputError("replay mode requires a propagation trace");
    validate_trace(*in.graph, *in.trace);
  } else {
    if (in.seeds.empty() || in.trivalency == nullptr) {
      throw InputError("icm mode requires seed nodes and activation probabilities");
    }
    if (cfg.icm_runs < 1) throw InputError("icm mode requires at least one run");
  }

  const DirectedGraph& g = *in.graph;
  const std::size_t m = g.edge_count();
  const std::vector<std::size_t> grid = resolve_q_grid(cfg, m);
  const std::size_t q_max = grid.empty() ? 0 : grid.back();

  ExperimentReport report;
  report.provenance.mode = to_string(cfg.mode);
  report.provenance.seed = cfg.seed;
  report.provenance.baseline_trials = cfg.baseline_trials;
  report.provenance.icm_runs = cfg.mode == PropagationMode::kIcm ? cfg.icm_runs : 0;
  report.provenance.node_count = g.node_count();
  report.provenance.edge_count = m;
  report.provenance.deterministic = cfg.deterministic;
  report.provenance.digests["graph"] = graph_digest(g);

  double icm_scale = 1.0;
  if (cfg.mode == PropagationMode::kIcm) {
    icm_scale = icm_simulate(g, in.seeds, *in.trivalency, RemovalSet{}, cfg.icm_runs, cfg.seed).mean_activated;
  }

  // Each trial draws one permutation; smaller q take its prefix.
  std::vector<RemovalSet> trial_sets;
  trial_sets.reserve(cfg.baseline_trials);
  for (std::size_t t = 0; t < cfg.baseline_trials; ++t) {
    trial_sets.push_back(random_removal(g, q_max, counter_hash(cfg.seed, kBaselineStream, t)));
  }
  std::map<std::size_t, double> baseline_mean;
  for (std::size_t q : grid) {
    BaselineRow row;
    row.q = q;
    double sum = 0.0;
    for (const RemovalSet& set : trial_sets) {
      const double r = reachability_of(in, cfg, set.prefix(q), icm_scale);
      row.trials.push_back(r);
      sum += r;
    }
    row.mean = sum / static_cast<double>(cfg.baseline_trials);
    baseline_mean[q] = row.mean;
    report.baseline.push_back(std::move(row));
  }

  for (ScoreMethod method : cfg.methods) {
    const LinkScores scores = score_links(method, g, in.partition, cfg.spectral);
    const RemovalSet ranked = top_q(g, scores, q_max);
    for (std::size_t q : grid) {
      const RemovalSet removal = ranked.prefix(q);
      const RemovalSet direct = top_q(g, scores, q);
      for (std::size_t k = 0; k < q; ++k) {
        if (direct[k].id != removal[k].id) {
          throw std::logic_error("top-q prefix property violated for " + std::string(method_name(method)));
        }
      }
      ReportRow row;
      row.method = std::string(method_name(method));
      row.q = q;
      row.q_frac = m == 0 ? 0.0 : static_cast<double>(q) / static_cast<double>(m);
      row.reachability = reachability_of(in, cfg, removal, icm_scale);
      row.baseline_mean = baseline_mean[q];
      row.efficiency = efficiency(row.baseline_mean, row.reachability);
      if (in.partition != nullptr) row.between_frac = between_fraction(*in.partition, removal);
      row.flags = scores.flags.to_string();
      report.rows.push_back(std::move(row));
    }
  }
  audit_report(report);
  return report;
}

void audit_report(const ExperimentReport& report) {
  for (const ReportRow& row : report.rows) {
    const double expected = efficiency(row.baseline_mean, row.reachability);
    if (!(std::abs(expected - row.efficiency) <= 1e-12)) {
      throw std::logic_error("efficiency column of " + row.method + " at q = " + std::to_string(row.q) +
                             " is inconsistent with its reachability columns");
    }
    if (!(row.q_frac >= 0.0 && row.q_frac <= 1.0)) {
      throw std::logic_error("q fraction outside [0, 1] for " + row.method);
    }
    if (row.between_frac && !(*row.between_frac >= 0.0 && *row.between_frac <= 1.0)) {
      throw std::logic_error("between-network fraction outside [0, 1] for " + row.method);
    }
  }
}

std::string digest_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string graph_digest(const DirectedGraph& graph) {
  std::string bytes;
  bytes.reserve(8 * graph.edge_count() + 8);
  auto put = [&](std::uint32_t v) {
    for (int k = 0; k < 4; ++k) bytes.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
  };
  put(static_cast<std::uint32_t>(graph.node_count()));
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    put(graph.edge(e).follower);
    put(graph.edge(e).followee);
  }
  return digest_hex(bytes);
}

}  // namespace linkscope
