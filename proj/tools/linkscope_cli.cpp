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

// linkscope command line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linkscope/error.hpp"
#include "linkscope/experiment.hpp"
#include "linkscope/graph.hpp"
#include "linkscope/io.hpp"
#include "linkscope/propagation.hpp"
#include "linkscope/random.hpp"
#include "linkscope/scoring.hpp"
#include "linkscope/synthgen.hpp"

namespace ls = linkscope;

namespace {

constexpr std::uint64_t kTrivalencyStream = 0x7472697661ULL;

struct GraphArgs {
  std::string edges;
  std::string labels;
};

struct SpectralArgs {
  double tol = 1e-10;
  int max_iter = 10000;
  bool deterministic = false;
};

void add_graph_options(CLI::App* cmd, GraphArgs& g) {
  cmd->add_option("--edges", g.edges, "Edge list TSV (follower, followee)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--labels", g.labels, "Node label TSV")->check(CLI::ExistingFile);
}

void add_spectral_options(CLI::App* cmd, SpectralArgs& s) {
  cmd->add_option("--tol", s.tol, "Power iteration residual tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", s.max_iter, "Power iteration cap")->check(CLI::PositiveNumber);
  cmd->add_flag("--deterministic", s.deterministic, "Fixed-order reductions (always on; recorded in reports)");
}

ls::LoadedGraph load(const GraphArgs& g) {
  return ls::load_graph(g.edges, g.labels.empty() ? std::nullopt : std::optional<std::string>(g.labels));
}

ls::SpectralConfig spectral_config(const SpectralArgs& s, std::uint64_t seed) {
  ls::SpectralConfig cfg;
  cfg.tol = s.tol;
  cfg.max_iter = s.max_iter;
  cfg.seed = seed;
  cfg.deterministic = true;
  return cfg;
}

ls::ScoreMethod method_or_throw(const std::string& name) {
  auto m = ls::parse_method(name);
  if (!m) throw ls::InputError("unknown method '" + name + "'");
  return *m;
}

std::vector<ls::ScoreMethod> methods_or_throw(const std::vector<std::string>& names, bool have_partition) {
  std::vector<ls::ScoreMethod> out;
  for (const std::string& name : names) {
    if (name == "all") {
      for (ls::ScoreMethod m : ls::kAllScoreMethods) {
        if (have_partition || !ls::requires_partition(m)) out.push_back(m);
      }
    } else {
      out.push_back(method_or_throw(name));
    }
  }
  return out;
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ls::InputError("cannot write '" + path + "'");
  out << text;
}

ls::TrivalencyAssignment trivalency_for(const ls::DirectedGraph& g, std::uint64_t seed) {
  return ls::assign_trivalency(g, ls::counter_hash(seed, kTrivalencyStream, 0));
}

// Removal set from --method/--q, or empty.
ls::RemovalSet removal_from(const ls::LoadedGraph& lg, const std::string& method, std::size_t q,
                            const ls::SpectralConfig& cfg) {
  if (method.empty() || q == 0) return {};
  const ls::ScoreMethod m = method_or_throw(method);
  const ls::NoNPartition* p = lg.partition ? &*lg.partition : nullptr;
  const ls::LinkScores scores = ls::score_links(m, lg.graph, p, cfg);
  if (scores.flags.degraded()) std::cerr << "warning: " << scores.flags.to_string() << "\n";
  return ls::top_q(lg.graph, scores, q);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral link scoring and propagation containment experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Master seed")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a two-group synthetic graph");
  std::string preset = "dataset1";
  ls::TwoGroupParams custom;
  std::string out_edges, out_labels, out_seeds;
  gen->add_option("--preset", preset, "dataset1, dataset2 or custom")
      ->check(CLI::IsMember({"dataset1", "dataset2", "custom"}))
      ->capture_default_str();
  gen->add_option("--n1", custom.n1);
  gen->add_option("--n2", custom.n2);
  gen->add_option("--p11", custom.p11);
  gen->add_option("--p12", custom.p12);
  gen->add_option("--p21", custom.p21);
  gen->add_option("--p22", custom.p22);
  gen->add_option("--n-ini", custom.n_ini, "Seed posters drawn from group g1");
  gen->add_option("--out-edges", out_edges)->required();
  gen->add_option("--out-labels", out_labels)->required();
  gen->add_option("--out-seeds", out_seeds);

  // score
  auto* score = app.add_subcommand("score", "Rank follower links by score");
  GraphArgs score_graph;
  SpectralArgs score_spectral;
  std::string score_method = "LES", score_out;
  std::optional<std::size_t> score_q;
  add_graph_options(score, score_graph);
  add_spectral_options(score, score_spectral);
  score->add_option("--method", score_method)->capture_default_str();
  score->add_option("--q", score_q, "Number of links to list (default all)");
  score->add_option("--out", score_out, "Output path (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Removal sweep against the random baseline");
  GraphArgs sweep_graph;
  SpectralArgs sweep_spectral;
  std::vector<std::string> sweep_methods{"all"};
  std::vector<std::size_t> sweep_q;
  std::vector<double> sweep_qfrac;
  std::string sweep_trace, sweep_seeds, sweep_mode, sweep_format = "csv", sweep_out, frame_width,
                               non_edge = "reject";
  std::size_t sweep_trials = 1000, baseline_trials = 10, n_ini = 0;
  add_graph_options(sweep, sweep_graph);
  add_spectral_options(sweep, sweep_spectral);
  sweep->add_option("--method", sweep_methods, "Score methods, or 'all'")->delimiter(',');
  sweep->add_option("--q", sweep_q, "Absolute removal counts")->delimiter(',');
  sweep->add_option("--q-frac", sweep_qfrac, "Removal counts as fractions of m")->delimiter(',');
  sweep->add_option("--trace", sweep_trace, "Propagation trace TSV (replay mode)")->check(CLI::ExistingFile);
  sweep->add_option("--seeds", sweep_seeds, "Seed list (icm mode)")->check(CLI::ExistingFile);
  sweep->add_option("--n-ini", n_ini, "Sample this many seeds from group g1 (icm mode)");
  sweep->add_option("--mode", sweep_mode, "replay or icm (default: replay when --trace is given)")
      ->check(CLI::IsMember({"replay", "icm"}));
  sweep->add_option("--trials", sweep_trials, "ICM runs per evaluation")->capture_default_str();
  sweep->add_option("--baseline-trials", baseline_trials, "Random removal trials")->capture_default_str();
  sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sweep->add_option("--out", sweep_out, "Report path (default stdout)");
  sweep->add_option("--frame-width", frame_width, "Frame width for timestamped traces (e.g. 1h, 30m)");
  sweep->add_option("--non-edge", non_edge, "reject, insert-edge or drop")
      ->check(CLI::IsMember({"reject", "insert-edge", "drop"}))
      ->capture_default_str();

  // replay
  auto* replay = app.add_subcommand("replay", "Replay a trace, optionally after removing top-q links");
  GraphArgs replay_graph;
  SpectralArgs replay_spectral;
  std::string replay_trace, replay_method;
  std::size_t replay_q = 0;
  add_graph_options(replay, replay_graph);
  add_spectral_options(replay, replay_spectral);
  replay->add_option("--trace", replay_trace)->required()->check(CLI::ExistingFile);
  replay->add_option("--method", replay_method);
  replay->add_option("--q", replay_q);
  replay->add_option("--frame-width", frame_width);
  replay->add_option("--non-edge", non_edge)->check(CLI::IsMember({"reject", "insert-edge", "drop"}));

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Independent cascade simulation");
  GraphArgs sim_graph;
  SpectralArgs sim_spectral;
  std::string sim_seeds, sim_method;
  std::size_t sim_q = 0, sim_trials = 1000;
  add_graph_options(simulate, sim_graph);
  add_spectral_options(simulate, sim_spectral);
  simulate->add_option("--seeds", sim_seeds)->check(CLI::ExistingFile);
  simulate->add_option("--n-ini", n_ini);
  simulate->add_option("--trials", sim_trials)->capture_default_str();
  simulate->add_option("--method", sim_method);
  simulate->add_option("--q", sim_q);

  // verify-bounds
  auto* verify = app.add_subcommand("verify-bounds", "Check the per-frame increment bound on a trace");
  GraphArgs verify_graph;
  std::string verify_trace;
  std::optional<std::size_t> verify_s;
  add_graph_options(verify, verify_graph);
  verify->add_option("--trace", verify_trace)->required()->check(CLI::ExistingFile);
  verify->add_option("--s", verify_s, "Sparsity s (default: largest frame increment)");
  verify->add_option("--frame-width", frame_width);
  verify->add_option("--non-edge", non_edge)->check(CLI::IsMember({"reject", "insert-edge", "drop"}));

  CLI11_PARSE(app, argc, argv);

  auto trace_options = [&] {
    ls::TraceOptions opts;
    if (!frame_width.empty()) opts.frame_width_us = ls::parse_duration_us(frame_width);
    opts.non_edge = *ls::parse_non_edge_policy(non_edge);
    return opts;
  };
  auto seeds_for = [&](const ls::LoadedGraph& lg, const std::string& path) {
    if (!path.empty()) return ls::load_seed_list(path, lg.ids);
    if (n_ini == 0) throw ls::InputError("icm mode needs --seeds or --n-ini");
    if (!lg.partition) throw ls::InputError("--n-ini needs --labels");
    return ls::sample_seeds(*lg.partition, n_ini, seed);
  };

  try {
    if (*gen) {
      ls::TwoGroupParams params = preset == "dataset1"   ? ls::dataset1_preset()
                                  : preset == "dataset2" ? ls::dataset2_preset()
                                                         : custom;
      if (gen->count("--n1") > 0) params.n1 = custom.n1;
      if (gen->count("--n2") > 0) params.n2 = custom.n2;
      if (gen->count("--n-ini") > 0) params.n_ini = custom.n_ini;
      if (gen->count("--p11") > 0) params.p11 = custom.p11;
      if (gen->count("--p12") > 0) params.p12 = custom.p12;
      if (gen->count("--p21") > 0) params.p21 = custom.p21;
      if (gen->count("--p22") > 0) params.p22 = custom.p22;
      params.seed = seed;
      params.validate();
      const ls::TwoGroupGraph tg = ls::generate_two_group(params);
      std::ostringstream edges, labels;
      ls::write_edge_list(edges, tg.graph, nullptr);
      ls::write_labels(labels, tg.partition, nullptr);
      write_text(out_edges, edges.str());
      write_text(out_labels, labels.str());
      if (!out_seeds.empty()) {
        std::ostringstream seeds;
        for (ls::NodeId v : ls::sample_seeds(tg.partition, params.n_ini, seed)) seeds << v << '\n';
        write_text(out_seeds, seeds.str());
      }
      std::cerr << "generated n=" << tg.graph.node_count() << " m=" << tg.graph.edge_count() << "\n";
      return 0;
    }

    if (*score) {
      const ls::LoadedGraph lg = load(score_graph);
      const ls::ScoreMethod m = method_or_throw(score_method);
      const ls::LinkScores scores =
          ls::score_links(m, lg.graph, lg.partition ? &*lg.partition : nullptr, spectral_config(score_spectral, seed));
      if (scores.flags.degraded()) std::cerr << "warning: " << scores.flags.to_string() << "\n";
      const std::size_t q = score_q.value_or(lg.graph.edge_count());
      std::ostringstream out;
      ls::write_scores(out, ls::top_q(lg.graph, scores, q), &lg.ids);
      write_text(score_out, out.str());
      return 0;
    }

    if (*sweep) {
      ls::LoadedGraph lg = load(sweep_graph);
      ls::SweepConfig cfg;
      cfg.methods = methods_or_throw(sweep_methods, lg.partition.has_value());
      cfg.q_counts = sweep_q;
      cfg.q_fractions = sweep_qfrac;
      if (cfg.q_counts.empty() && cfg.q_fractions.empty()) cfg.q_fractions = {0.0, 0.05, 0.1, 0.15, 0.2};
      cfg.mode = sweep_mode.empty() ? (sweep_trace.empty() ? ls::PropagationMode::kIcm : ls::PropagationMode::kReplay)
                                    : *ls::parse_mode(sweep_mode);
      cfg.icm_runs = sweep_trials;
      cfg.baseline_trials = baseline_trials;
      cfg.seed = seed;
      cfg.deterministic = sweep_spectral.deterministic;
      cfg.spectral = spectral_config(sweep_spectral, seed);

      ls::SweepInputs in;
      std::optional<ls::PropagationTrace> trace;
      std::optional<ls::TrivalencyAssignment> triv;
      std::map<std::string, std::string> digests;
      digests["edges"] = ls::digest_hex(file_bytes(sweep_graph.edges));
      if (!sweep_graph.labels.empty()) digests["labels"] = ls::digest_hex(file_bytes(sweep_graph.labels));
      if (cfg.mode == ls::PropagationMode::kReplay) {
        if (sweep_trace.empty()) throw ls::InputError("replay mode needs --trace");
        trace = ls::load_trace(sweep_trace, lg, trace_options());
        digests["trace"] = ls::digest_hex(file_bytes(sweep_trace));
        in.trace = &*trace;
      } else {
        in.seeds = seeds_for(lg, sweep_seeds);
        if (!sweep_seeds.empty()) digests["seeds"] = ls::digest_hex(file_bytes(sweep_seeds));
        triv = trivalency_for(lg.graph, seed);
        in.trivalency = &*triv;
      }
      in.graph = &lg.graph;
      in.partition = lg.partition ? &*lg.partition : nullptr;
      ls::ExperimentReport report = ls::run_sweep(in, cfg);
      for (auto& [k, v] : digests) report.provenance.digests[k] = v;
      std::ostringstream out;
      ls::write_report(report, out, *ls::parse_report_format(sweep_format));
      write_text(sweep_out, out.str());
      return 0;
    }

    if (*replay) {
      ls::LoadedGraph lg = load(replay_graph);
      const ls::PropagationTrace trace = ls::load_trace(replay_trace, lg, trace_options());
      const ls::RemovalSet removal =
          removal_from(lg, replay_method, replay_q, spectral_config(replay_spectral, seed));
      const ls::ReplayResult r = ls::replay(lg.graph, trace, removal);
      std::cout << "frames\t" << trace.frame_count() << "\n"
                << "removed\t" << removal.size() << "\n"
                << "active\t" << r.active << "\n"
                << "baseline\t" << r.baseline << "\n"
                << "reachability\t" << ls::format_double(r.reachability) << "\n";
      return 0;
    }

    if (*simulate) {
      const ls::LoadedGraph lg = load(sim_graph);
      const std::vector<ls::NodeId> seeds = seeds_for(lg, sim_seeds);
      const ls::TrivalencyAssignment triv = trivalency_for(lg.graph, seed);
      const ls::RemovalSet removal = removal_from(lg, sim_method, sim_q, spectral_config(sim_spectral, seed));
      const ls::IcmResult r = ls::icm_simulate(lg.graph, seeds, triv, removal, sim_trials, seed);
      std::cout << "runs\t" << sim_trials << "\n"
                << "removed\t" << removal.size() << "\n"
                << "mean_activated\t" << ls::format_double(r.mean_activated) << "\n";
      return 0;
    }

    if (*verify) {
      ls::LoadedGraph lg = load(verify_graph);
      const ls::PropagationTrace trace = ls::load_trace(verify_trace, lg, trace_options());
      const ls::BoundReport b = ls::verify_increment_bound(lg.graph, trace, verify_s);
      std::cout << "#frame\tincrement\tconstant\trank\tcondition\tstatus\n";
      for (const ls::FrameBound& f : b.frames) {
        std::cout << f.frame << '\t' << f.increment << '\t' << ls::format_double(f.frame_constant) << '\t' << f.rank
                  << '\t' << ls::format_double(f.condition) << '\t'
                  << (f.skipped ? "skipped" : f.holds ? "holds" : "violated") << '\n';
      }
      std::cout << "# C=" << ls::format_double(b.constant) << " s=" << b.s
                << " lambda_max=" << ls::format_double(b.lambda_max) << " bound=" << ls::format_double(b.bound)
                << " skipped=" << b.skipped << " violated=" << b.violated << "\n";
      return b.all_hold() ? 0 : 3;
    }
  } catch (const ls::InputError& e) {
    std::cerr << "linkscope: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "linkscope: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
