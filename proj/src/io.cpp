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

#include "linkscope/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "linkscope/error.hpp"

namespace linkscope {
namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

[[noreturn]] void fail_line(const std::string& source, std::size_t line_no, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line_no) + ": " + what);
}

// Splits a data line into exactly `want` non-empty tab-separated fields.
std::vector<std::string_view> fields(const std::string& line, std::size_t want, const std::string& source,
                                     std::size_t line_no) {
  std::vector<std::string_view> f = split(line, '\t');
  if (f.size() != want) {
    fail_line(source, line_no, "expected " + std::to_string(want) + " tab-separated fields, found " +
                                   std::to_string(f.size()));
  }
  for (auto& s : f) {
    s = trim(s);
    if (s.empty()) fail_line(source, line_no, "empty field");
  }
  return f;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

void read_labels_into(std::istream& in, const std::string& source, NodeIdMap& ids,
                      std::vector<std::uint32_t>& label_of, std::vector<std::string>& names) {
  std::unordered_map<std::string, std::uint32_t> label_index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = fields(line, 2, source, line_no);
    const NodeId node = ids.intern(f[0]);
    auto [it, inserted] = label_index.try_emplace(std::string(f[1]), static_cast<std::uint32_t>(names.size()));
    if (inserted) names.emplace_back(f[1]);
    if (label_of.size() <= node) label_of.resize(node + 1, NoNPartition::kUnlabeled);
    if (label_of[node] != NoNPartition::kUnlabeled && label_of[node] != it->second) {
      fail_line(source, line_no, "node '" + std::string(f[0]) + "' already has label '" + names[label_of[node]] + "'");
    }
    label_of[node] = it->second;
  }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Json row_to_json(const ReportRow& r) {
  Json j;
  j["method"] = r.method;
  j["q"] = r.q;
  j["q_frac"] = r.q_frac;
  j["reachability"] = r.reachability;
  j["baseline_mean"] = r.baseline_mean;
  j["efficiency"] = r.efficiency;
  j["between_frac"] = r.between_frac ? Json(*r.between_frac) : Json(nullptr);
  j["flags"] = r.flags;
  return j;
}

ReportRow row_from_json(const Json& j) {
  ReportRow r;
  r.method = j.at("method").get<std::string>();
  r.q = j.at("q").get<std::size_t>();
  r.q_frac = j.at("q_frac").get<double>();
  r.reachability = j.at("reachability").get<double>();
  r.baseline_mean = j.at("baseline_mean").get<double>();
  r.efficiency = j.at("efficiency").get<double>();
  if (!j.at("between_frac").is_null()) r.between_frac = j.at("between_frac").get<double>();
  r.flags = j.at("flags").get<std::string>();
  return r;
}

}  // namespace

NodeId NodeIdMap::intern(std::string_view name) {
  auto [it, inserted] = index_.try_emplace(std::string(name), static_cast<NodeId>(names_.size()));
  if (inserted) {
    if (names_.size() >= std::numeric_limits<NodeId>::max()) throw InputError("too many nodes");
    names_.emplace_back(name);
  }
  return it->second;
}

std::optional<NodeId> NodeIdMap::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LoadedGraph parse_graph(std::istream& edges, std::istream* labels, const std::string& edge_source,
                        const std::string& label_source) {
  LoadedGraph out;
  std::vector<Edge> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = fields(line, 2, edge_source, line_no);
    const NodeId i = out.ids.intern(f[0]);
    const NodeId j = out.ids.intern(f[1]);
    pairs.push_back({i, j});
  }
  if (labels != nullptr) {
    std::vector<std::uint32_t> label_of;
    std::vector<std::string> names;
    read_labels_into(*labels, label_source, out.ids, label_of, names);
    label_of.resize(out.ids.size(), NoNPartition::kUnlabeled);
    out.partition.emplace(std::move(label_of), std::move(names));
  }
  out.graph = build_graph(pairs, out.ids.size());
  return out;
}

LoadedGraph load_graph(const std::string& edge_path, const std::optional<std::string>& label_path) {
  std::ifstream edges = open_input(edge_path);
  if (!label_path) return parse_graph(edges, nullptr, edge_path);
  std::ifstream labels = open_input(*label_path);
  return parse_graph(edges, &labels, edge_path, *label_path);
}

std::vector<NodeId> parse_seed_list(std::istream& in, const NodeIdMap& ids, const std::string& source) {
  std::vector<NodeId> seeds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = fields(line, 1, source, line_no);
    const auto id = ids.find(f[0]);
    if (!id) fail_line(source, line_no, "seed '" + std::string(f[0]) + "' is not a node of the graph");
    seeds.push_back(*id);
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  if (seeds.empty()) throw InputError(source + ": no seeds");
  return seeds;
}

std::vector<NodeId> load_seed_list(const std::string& path, const NodeIdMap& ids) {
  std::ifstream in = open_input(path);
  return parse_seed_list(in, ids, path);
}

std::optional<NonEdgePolicy> parse_non_edge_policy(std::string_view name) {
  if (name == "reject") return NonEdgePolicy::kReject;
  if (name == "insert-edge") return NonEdgePolicy::kInsertEdge;
  if (name == "drop") return NonEdgePolicy::kDrop;
  return std::nullopt;
}

std::int64_t parse_duration_us(std::string_view text) {
  text = trim(text);
  std::size_t split_at = 0;
  while (split_at < text.size() && ((text[split_at] >= '0' && text[split_at] <= '9') || text[split_at] == '.')) {
    ++split_at;
  }
  const std::string_view number = text.substr(0, split_at);
  const std::string_view unit = text.substr(split_at);
  double value = 0.0;
  if (number.empty() || !parse_number(number, value)) {
    throw InputError("bad duration '" + std::string(text) + "'");
  }
  double scale = 0.0;
  if (unit.empty() || unit == "s") scale = 1e6;
  else if (unit == "ms") scale = 1e3;
  else if (unit == "m" || unit == "min") scale = 60e6;
  else if (unit == "h") scale = 3600e6;
  else if (unit == "d") scale = 86400e6;
  else throw InputError("bad duration unit in '" + std::string(text) + "'");
  const double us = std::round(value * scale);
  if (!(us >= 1.0) || us > 9e18) throw InputError("duration '" + std::string(text) + "' must be positive");
  return static_cast<std::int64_t>(us);
}

std::optional<std::int64_t> parse_iso8601_us(std::string_view s) {
  std::size_t pos = 0;
  auto digits = [&](std::size_t count, int& out) {
    if (pos + count > s.size()) return false;
    int v = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const char c = s[pos + k];
      if (c < '0' || c > '9') return false;
      v = v * 10 + (c - '0');
    }
    out = v;
    pos += count;
    return true;
  };
  auto expect = [&](char c) {
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  };

  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!digits(4, year) || !expect('-') || !digits(2, month) || !expect('-') || !digits(2, day)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  std::int64_t frac_us = 0;
  std::int64_t offset_s = 0;
  if (pos < s.size()) {
    if (!expect('T') && !expect(' ')) return std::nullopt;
    if (!digits(2, hour) || !expect(':') || !digits(2, minute)) return std::nullopt;
    if (expect(':')) {
      if (!digits(2, second)) return std::nullopt;
      if (expect('.') || expect(',')) {
        std::int64_t scale = 100000;
        std::size_t n = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
          frac_us += (s[pos] - '0') * scale;
          scale /= 10;
          ++pos;
          ++n;
        }
        if (n == 0) return std::nullopt;
      }
    }
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    if (expect('Z')) {
    } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      const int sign = s[pos] == '-' ? -1 : 1;
      ++pos;
      int oh = 0, om = 0;
      if (!digits(2, oh)) return std::nullopt;
      expect(':');
      if (!digits(2, om)) return std::nullopt;
      offset_s = sign * (oh * 3600 + om * 60);
    }
    if (pos != s.size()) return std::nullopt;
  }
  const std::int64_t days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  const std::int64_t secs = days * 86400 + hour * 3600 + minute * 60 + second - offset_s;
  return secs * 1000000 + frac_us;
}

PropagationTrace parse_trace(std::istream& in, LoadedGraph& g, const TraceOptions& opts, TraceLoadReport* report,
                             const std::string& source) {
  struct Record {
    std::size_t line_no;
    std::int64_t key;
    NodeId retweeter;
    std::optional<NodeId> source;
  };
  TraceLoadReport stats;
  std::vector<Record> records;
  std::vector<Edge> inserted;
  std::optional<bool> timestamped;
  const std::size_t nodes_before = g.ids.size();

  auto resolve = [&](std::string_view name, std::size_t line_no, const char* role) -> std::optional<NodeId> {
    if (auto id = g.ids.find(name)) return id;
    if (opts.non_edge == NonEdgePolicy::kInsertEdge) return g.ids.intern(name);
    if (opts.non_edge == NonEdgePolicy::kDrop) return std::nullopt;
    fail_line(source, line_no, std::string(role) + " '" + std::string(name) + "' is not a node of the graph");
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = fields(line, 3, source, line_no);
    ++stats.records;

    std::int64_t key = 0;
    const bool is_frame = parse_number(f[0], key);
    if (!is_frame) {
      const auto ts = parse_iso8601_us(f[0]);
      if (!ts) fail_line(source, line_no, "'" + std::string(f[0]) + "' is neither a frame index nor an ISO-8601 time");
      key = *ts;
    }
    if (!timestamped) {
      timestamped = !is_frame;
      if (*timestamped && !opts.frame_width_us) {
        fail_line(source, line_no, "timestamped trace needs a frame width");
      }
    } else if (*timestamped == is_frame) {
      fail_line(source, line_no, "trace mixes frame indices and timestamps");
    }

    const bool seed = f[2] == "-";
    const auto retweeter = resolve(f[1], line_no, seed ? "seed" : "retweeter");
    if (seed) {
      if (!retweeter) {
        ++stats.dropped;
        continue;
      }
      ++stats.seeds;
      records.push_back({line_no, key, *retweeter, std::nullopt});
      continue;
    }
    const auto src = resolve(f[2], line_no, "source");
    if (!retweeter || !src) {
      ++stats.dropped;
      continue;
    }
    if (*retweeter == *src) fail_line(source, line_no, "'" + std::string(f[1]) + "' retweets itself");
    const bool known = *retweeter < g.graph.node_count() && *src < g.graph.node_count() &&
                       g.graph.has_edge(*retweeter, *src);
    if (!known) {
      if (opts.non_edge == NonEdgePolicy::kReject) {
        fail_line(source, line_no, "retweet (" + std::string(f[1]) + ", " + std::string(f[2]) +
                                       ") is not a follower link of the graph");
      }
      if (opts.non_edge == NonEdgePolicy::kDrop) {
        ++stats.dropped;
        continue;
      }
      inserted.push_back({*retweeter, *src});
    }
    records.push_back({line_no, key, *retweeter, src});
  }

  PropagationTrace trace;
  if (records.empty() || stats.seeds == 0) throw InputError(source + ": trace has no seed rows");

  if (!inserted.empty() || g.ids.size() != nodes_before) {
    std::vector<Edge> pairs;
    pairs.reserve(g.graph.edge_count() + inserted.size());
    for (EdgeId e = 0; e < g.graph.edge_count(); ++e) pairs.push_back(g.graph.edge(e));
    pairs.insert(pairs.end(), inserted.begin(), inserted.end());
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    stats.inserted = pairs.size() - g.graph.edge_count();
    g.graph = build_graph(pairs, g.ids.size());
    if (g.partition) {
      std::vector<std::uint32_t> labels(g.ids.size(), NoNPartition::kUnlabeled);
      std::vector<std::string> names;
      for (NodeId v = 0; v < nodes_before; ++v) labels[v] = g.partition->label(v);
      for (std::uint32_t k = 0; k < g.partition->network_count(); ++k) names.push_back(g.partition->name(k));
      g.partition.emplace(std::move(labels), std::move(names));
    }
  }

  std::int64_t key_min = records.front().key;
  for (const Record& r : records) key_min = std::min(key_min, r.key);
  auto frame_of = [&](std::int64_t key) {
    return *timestamped ? floor_div(key - key_min, *opts.frame_width_us) : key;
  };
  trace.first_frame = frame_of(key_min);
  std::int64_t last = trace.first_frame;
  for (const Record& r : records) last = std::max(last, frame_of(r.key));
  const std::int64_t span = last - trace.first_frame + 1;
  if (span > 50'000'000) throw InputError(source + ": trace spans " + std::to_string(span) + " frames");
  trace.frames.resize(static_cast<std::size_t>(span));
  for (const Record& r : records) {
    if (!r.source) {
      trace.seeds.push_back(r.retweeter);
    } else {
      trace.frames[static_cast<std::size_t>(frame_of(r.key) - trace.first_frame)].push_back({r.retweeter, *r.source});
    }
  }
  std::sort(trace.seeds.begin(), trace.seeds.end());
  trace.seeds.erase(std::unique(trace.seeds.begin(), trace.seeds.end()), trace.seeds.end());
  stats.timestamped = timestamped.value_or(false);
  if (report != nullptr) *report = stats;
  return trace;
}

PropagationTrace load_trace(const std::string& path, LoadedGraph& graph, const TraceOptions& opts,
                            TraceLoadReport* report) {
  std::ifstream in = open_input(path);
  return parse_trace(in, graph, opts, report, path);
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_report(const ExperimentReport& report, std::ostream& out, ReportFormat format) {
  audit_report(report);
  if (format == ReportFormat::kCsv) {
    out << kReportCsvHeader << '\n';
    for (const ReportRow& r : report.rows) {
      out << r.method << ',' << r.q << ',' << format_double(r.q_frac) << ',' << format_double(r.reachability) << ','
          << format_double(r.baseline_mean) << ',' << format_double(r.efficiency) << ','
          << (r.between_frac ? format_double(*r.between_frac) : std::string()) << ',' << r.flags << '\n';
    }
    return;
  }
  Json j;
  const Provenance& p = report.provenance;
  Json prov;
  prov["version"] = p.version;
  prov["mode"] = p.mode;
  prov["seed"] = p.seed;
  prov["baseline_trials"] = p.baseline_trials;
  prov["icm_runs"] = p.icm_runs;
  prov["node_count"] = p.node_count;
  prov["edge_count"] = p.edge_count;
  prov["deterministic"] = p.deterministic;
  prov["digests"] = Json::object();
  for (const auto& [k, v] : p.digests) prov["digests"][k] = v;
  j["provenance"] = std::move(prov);
  j["rows"] = Json::array();
  for (const ReportRow& r : report.rows) j["rows"].push_back(row_to_json(r));
  j["baseline"] = Json::array();
  for (const BaselineRow& b : report.baseline) {
    Json row;
    row["q"] = b.q;
    row["mean"] = b.mean;
    row["trials"] = b.trials;
    j["baseline"].push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

void write_report(const ExperimentReport& report, const std::string& path, ReportFormat format) {
  std::ostringstream buf;
  write_report(report, buf, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << buf.str();
  out.flush();
  if (!out) throw InputError("failed writing '" + path + "'");
}

ExperimentReport read_report(std::istream& in, ReportFormat format) {
  ExperimentReport report;
  if (format == ReportFormat::kJson) {
    Json j;
    try {
      j = Json::parse(in);
      const Json& prov = j.at("provenance");
      Provenance& p = report.provenance;
      p.version = prov.at("version").get<std::string>();
      p.mode = prov.at("mode").get<std::string>();
      p.seed = prov.at("seed").get<std::uint64_t>();
      p.baseline_trials = prov.at("baseline_trials").get<std::size_t>();
      p.icm_runs = prov.at("icm_runs").get<std::size_t>();
      p.node_count = prov.at("node_count").get<std::size_t>();
      p.edge_count = prov.at("edge_count").get<std::size_t>();
      p.deterministic = prov.at("deterministic").get<bool>();
      for (const auto& [k, v] : prov.at("digests").items()) p.digests[k] = v.get<std::string>();
      for (const Json& r : j.at("rows")) report.rows.push_back(row_from_json(r));
      for (const Json& b : j.at("baseline")) {
        report.baseline.push_back({b.at("q").get<std::size_t>(), b.at("mean").get<double>(),
                                   b.at("trials").get<std::vector<double>>()});
      }
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed report: ") + e.what());
    }
    return report;
  }

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || trim(line) != kReportCsvHeader) throw InputError("report csv: bad header");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 8) fail_line("report csv", line_no, "expected 8 columns");
    ReportRow r;
    r.method = std::string(f[0]);
    bool ok = parse_number(f[1], r.q) && parse_number(f[2], r.q_frac) && parse_number(f[3], r.reachability) &&
              parse_number(f[4], r.baseline_mean) && parse_number(f[5], r.efficiency);
    if (!f[6].empty()) {
      double b = 0.0;
      ok = ok && parse_number(f[6], b);
      r.between_frac = b;
    }
    if (!ok) fail_line("report csv", line_no, "bad number");
    r.flags = std::string(f[7]);
    report.rows.push_back(std::move(r));
  }
  return report;
}

ExperimentReport read_report(const std::string& path) {
  std::ifstream in = open_input(path);
  char first = 0;
  while (in.get(first) && std::isspace(static_cast<unsigned char>(first))) {
  }
  in.clear();
  in.seekg(0);
  return read_report(in, first == '{' ? ReportFormat::kJson : ReportFormat::kCsv);
}

void write_scores(std::ostream& out, const RemovalSet& ranked, const NodeIdMap* ids) {
  out << "#rank\tfollower\tfollowee\tscore\n";
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    const ScoredEdge& e = ranked[k];
    out << (k + 1) << '\t';
    if (ids != nullptr) {
      out << ids->name(e.edge.follower) << '\t' << ids->name(e.edge.followee);
    } else {
      out << e.edge.follower << '\t' << e.edge.followee;
    }
    out << '\t' << format_double(e.score) << '\n';
  }
}

void write_edge_list(std::ostream& out, const DirectedGraph& graph, const NodeIdMap* ids) {
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Edge edge = graph.edge(e);
    if (ids != nullptr) {
      out << ids->name(edge.follower) << '\t' << ids->name(edge.followee) << '\n';
    } else {
      out << edge.follower << '\t' << edge.followee << '\n';
    }
  }
}

void write_labels(std::ostream& out, const NoNPartition& partition, const NodeIdMap* ids) {
  for (NodeId v = 0; v < partition.node_count(); ++v) {
    const std::uint32_t label = partition.label(v);
    if (label == NoNPartition::kUnlabeled) continue;
    if (ids != nullptr) {
      out << ids->name(v);
    } else {
      out << v;
    }
    out << '\t' << partition.name(label) << '\n';
  }
}

}  // namespace linkscope
