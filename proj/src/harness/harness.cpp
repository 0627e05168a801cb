// Copyright 2026 The ACT-Bench Tools Authors
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


#include "actbench/harness/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "actbench/error.hpp"
#include "actbench/labeler/labeler.hpp"
#include "actbench/traj_core/trajectory_io.hpp"
#include "actbench/version.hpp"

namespace actbench::harness {
namespace {

using nlohmann::json;
using traj::Pose2D;
using traj::Trajectory;

constexpr std::string_view kNone = "none";

std::optional<BenchCategory> parse_category(const std::string& name) {
  if (name == kNone) return std::nullopt;
  if (auto c = labeler::bench_category_from_string(name)) return c;
  if (auto label = labeler::action_label_from_string(name)) {
    return labeler::to_benchmark_category(*label);
  }
  throw Error(ErrorCode::kSchema, "unknown estimated_category '" + name + "'");
}

std::string category_name(const std::optional<BenchCategory>& c) {
  return c ? std::string(labeler::to_string(*c)) : std::string(kNone);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::optional<BenchCategory> derive_category(const Trajectory& traj,
                                             const labeler::RuleConfig& rules) {
  if (traj.size() < 2) return std::nullopt;
  return labeler::to_benchmark_category(labeler::label_trajectory(traj, rules));
}

std::string fixed(double v) { return fmt::format("{:.6f}", v); }

std::string fixed(const std::optional<double>& v) { return v ? fixed(*v) : std::string(); }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace

json rollout_to_json(const RolloutRecord& record) {
  json j = {{"sample_id", record.sample_id}, {"producer", record.producer}};
  if (record.category_provided) j["estimated_category"] = category_name(record.estimated_category);
  j["estimated_trajectory"] = traj::trajectory_to_json(record.estimated_trajectory);
  return j;
}

RolloutRecord rollout_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::kSchema, "rollout must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key != "sample_id" && key != "producer" && key != "estimated_category" &&
          key != "estimated_trajectory") {
        throw Error(ErrorCode::kSchema, "unexpected field '" + key + "'");
      }
    }
    const auto id = j.at("sample_id").get<std::string>();
    if (id.empty()) throw Error(ErrorCode::kSchema, "empty sample_id");
    RolloutRecord r{id, j.at("producer").get<std::string>(), false, std::nullopt,
                    traj::trajectory_from_json(j.at("estimated_trajectory"))};
    if (r.estimated_trajectory.frame().kind != traj::FrameKind::kEgo) {
      throw Error(ErrorCode::kFrame, "estimated_trajectory must be ego-local");
    }
    if (auto it = j.find("estimated_category"); it != j.end() && !it->is_null()) {
      r.category_provided = true;
      r.estimated_category = parse_category(it->get<std::string>());
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, e.what());
  }
}

void write_rollouts(std::ostream& out, std::span<const RolloutRecord> records) {
  for (const auto& r : records) out << rollout_to_json(r).dump() << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing rollouts");
}

IngestResult ingest_rollouts(std::istream& in, const std::set<std::string>* known_ids) {
  IngestResult result;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  std::size_t non_blank = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++non_blank;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      result.rejects.push_back({line_no, "", std::string("malformed JSON: ") + e.what()});
      continue;
    }
    std::string id;
    if (j.is_object() && j.contains("sample_id") && j["sample_id"].is_string()) {
      id = j["sample_id"].get<std::string>();
    }
    try {
      RolloutRecord r = rollout_from_json(j);
      if (known_ids != nullptr && !known_ids->contains(r.sample_id)) {
        result.rejects.push_back({line_no, id, "sample_id not in manifest"});
        continue;
      }
      if (!seen.insert(r.sample_id).second) {
        result.rejects.push_back({line_no, id, "duplicate sample_id"});
        continue;
      }
      result.records.push_back(std::move(r));
    } catch (const Error& e) {
      result.rejects.push_back(
          {line_no, id, fmt::format("{}: {}", actbench::to_string(e.code()), e.what())});
    }
  }
  if (result.records.empty()) {
    throw Error(ErrorCode::kValidation,
                fmt::format("no valid rollouts ({} non-blank lines, {} rejected)", non_blank,
                            result.rejects.size()));
  }
  return result;
}

IngestResult ingest_rollouts_file(const std::string& path, const std::set<std::string>* known_ids) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ingest_rollouts(in, known_ids);
}

RolloutRecord oracle_rollout(const bench::BenchmarkPair& pair, const OracleConfig& cfg,
                             const labeler::RuleConfig& rules) {
  if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma)) {
    throw Error(ErrorCode::kParameter, "noise sigma must be finite and >= 0");
  }
  if (!(cfg.drop_rate >= 0.0 && cfg.drop_rate <= 1.0)) {
    throw Error(ErrorCode::kParameter, "drop rate must be in [0, 1]");
  }
  std::mt19937_64 rng(fnv1a(pair.sample_id) ^ cfg.seed);
  std::vector<Pose2D> pts(pair.instruction.points().begin(), pair.instruction.points().end());
  for (auto& p : pts) {
    const double nx = standard_normal(rng);
    const double ny = standard_normal(rng);
    p.x += cfg.noise_sigma * nx;
    p.y += cfg.noise_sigma * ny;
  }
  Trajectory est(pair.instruction.frame(), std::move(pts), pair.instruction.fps());
  std::optional<BenchCategory> category = derive_category(est, rules);
  const double draw = uniform01(rng);
  if (draw < cfg.drop_rate) {
    std::vector<BenchCategory> others;
    for (BenchCategory c : labeler::kBenchCategories) {
      if (c != pair.instructed_category) others.push_back(c);
    }
    category = others[static_cast<std::size_t>(uniform01(rng) * others.size())];
  }
  return {pair.sample_id, cfg.producer, true, category, std::move(est)};
}

std::string_view to_string(CategorySource source) {
  return source == CategorySource::kProvided ? "provided" : "derived";
}

std::string digest(std::string_view text) { return fmt::format("{:016x}", fnv1a(text)); }

ReportBundle run_eval(std::span<const bench::BenchmarkPair> manifest, const IngestResult& rollouts,
                      const EvalOptions& opts) {
  ReportBundle bundle;
  Coverage& cov = bundle.coverage;
  cov.manifest_pairs = manifest.size();

  std::map<std::string, const bench::BenchmarkPair*> pairs;
  std::string manifest_ids;
  for (const auto& p : manifest) {
    if (!pairs.emplace(p.sample_id, &p).second) {
      throw Error(ErrorCode::kIntegrity, "duplicate manifest sample id '" + p.sample_id + "'");
    }
  }
  for (const auto& [id, p] : pairs) manifest_ids += id + '\n';

  std::map<std::string, const RolloutRecord*> by_id;
  for (const auto& r : rollouts.records) {
    if (!pairs.contains(r.sample_id)) {
      cov.unresolved.push_back(r.sample_id);
    } else {
      by_id.emplace(r.sample_id, &r);
    }
  }
  std::sort(cov.unresolved.begin(), cov.unresolved.end());
  std::map<std::string, const RolloutReject*> rejected_lines;
  for (const auto& r : rollouts.rejects) {
    if (pairs.contains(r.sample_id) && !by_id.contains(r.sample_id)) {
      rejected_lines.emplace(r.sample_id, &r);
    } else {
      cov.unattributed.push_back(r);
    }
  }

  std::set<std::string> producers;
  std::vector<metrics::LabelPair> labels;
  std::vector<metrics::CategoryRecord> records;
  for (const auto& [id, pair] : pairs) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      if (const auto rj = rejected_lines.find(id); rj != rejected_lines.end()) {
        cov.rejected.push_back(*rj->second);
      } else {
        cov.gaps.push_back(id);
      }
      continue;
    }
    const RolloutRecord& r = *it->second;
    const std::vector<double> stamps = pair->instruction.timestamps();
    std::optional<Trajectory> aligned;
    try {
      aligned = traj::resample_by_time(r.estimated_trajectory, stamps);
    } catch (const Error& e) {
      cov.rejected.push_back(
          {0, id, fmt::format("{}: {}", actbench::to_string(e.code()), e.what())});
      continue;
    }
    SampleResult s{id,
                   pair->template_id,
                   r.producer,
                   pair->instructed_category,
                   r.estimated_category,
                   r.category_provided ? CategorySource::kProvided : CategorySource::kDerived,
                   metrics::ade(pair->instruction, *aligned),
                   metrics::fde(pair->instruction, *aligned)};
    if (!r.category_provided) s.estimated = derive_category(*aligned, opts.rules);
    for (std::size_t i = 0; i < stamps.size(); ++i) {
      bundle.scatter.push_back({id, pair->instructed_category, i, stamps[i],
                                pair->instruction[i].x, pair->instruction[i].y,
                                (*aligned)[i].x, (*aligned)[i].y});
    }
    producers.insert(r.producer);
    labels.push_back({s.instructed, s.estimated, id});
    records.push_back({s.instructed, s.ade, s.fde});
    bundle.samples.push_back(std::move(s));
  }
  cov.evaluated = bundle.samples.size();
  if (bundle.samples.empty()) {
    throw Error(ErrorCode::kCoverage,
                fmt::format("none of the {} manifest pairs has a usable rollout", manifest.size()));
  }

  bundle.iec = metrics::iec(labels);
  bundle.confusion = metrics::confusion_matrix(labels, labeler::kBenchCategories);
  bundle.categories = metrics::aggregate_by_category(records);

  ReportMetadata& meta = bundle.metadata;
  meta.tool_version = std::string(kVersion);
  meta.rules_digest = digest(labeler::write_rule_config(opts.rules));
  meta.manifest_digest = digest(manifest_ids);
  meta.producers.assign(producers.begin(), producers.end());
  meta.conditioning = opts.conditioning;
  meta.created_at = opts.created_at;
  return bundle;
}

json report_to_json(const ReportBundle& b) {
  const ReportMetadata& m = b.metadata;
  json mapping = json::object();
  for (labeler::ActionLabel label : labeler::kRuleLabels) {
    mapping[std::string(labeler::to_string(label))] =
        category_name(labeler::to_benchmark_category(label));
  }
  json meta = {{"tool_version", m.tool_version},   {"rules_digest", m.rules_digest},
               {"manifest_digest", m.manifest_digest}, {"producers", m.producers},
               {"conditioning", m.conditioning},    {"label_mapping", mapping}};
  if (m.created_at) meta["created_at"] = *m.created_at;

  json categories = json::array();
  for (std::size_t i = 0; i < b.categories.rows.size(); ++i) {
    const auto& row = b.categories.rows[i];
    categories.push_back({{"category", labeler::to_string(row.category)},
                          {"count", row.count},
                          {"matched", b.confusion.counts[i][i]},
                          {"mean_ade", optional_number(row.mean_ade)},
                          {"mean_fde", optional_number(row.mean_fde)}});
  }
  json rows = json::array();
  for (BenchCategory c : b.confusion.categories) rows.push_back(labeler::to_string(c));
  json columns = rows;
  columns.push_back(kNone);

  const auto rejects_json = [](const std::vector<RolloutReject>& list) {
    json out = json::array();
    for (const auto& r : list) {
      out.push_back({{"line", r.line}, {"sample_id", r.sample_id}, {"reason", r.reason}});
    }
    return out;
  };
  json samples = json::array();
  for (const auto& s : b.samples) {
    samples.push_back({{"sample_id", s.sample_id},
                       {"template_id", s.template_id},
                       {"producer", s.producer},
                       {"instructed_category", labeler::to_string(s.instructed)},
                       {"estimated_category", category_name(s.estimated)},
                       {"category_source", to_string(s.source)},
                       {"ade", s.ade},
                       {"fde", s.fde}});
  }
  return {{"schema", m.schema},
          {"metadata", meta},
          {"summary",
           {{"iec", b.iec},
            {"evaluated", b.coverage.evaluated},
            {"average_ade", optional_number(b.categories.average_ade)},
            {"average_fde", optional_number(b.categories.average_fde)}}},
          {"categories", categories},
          {"confusion",
           {{"rows", rows},
            {"columns", columns},
            {"counts", b.confusion.counts},
            {"row_ratios", b.confusion.row_ratios}}},
          {"coverage",
           {{"manifest_pairs", b.coverage.manifest_pairs},
            {"evaluated", b.coverage.evaluated},
            {"gaps", b.coverage.gaps},
            {"rejected", rejects_json(b.coverage.rejected)},
            {"unattributed", rejects_json(b.coverage.unattributed)},
            {"unresolved", b.coverage.unresolved}}},
          {"samples", samples}};
}

std::string report_csv(const ReportBundle& b) {
  std::string out = "category,count,matched,iec,mean_ade,mean_fde\n";
  std::int64_t matched_total = 0;
  for (std::size_t i = 0; i < b.categories.rows.size(); ++i) {
    const auto& row = b.categories.rows[i];
    const std::int64_t matched = b.confusion.counts[i][i];
    matched_total += matched;
    const std::string iec =
        row.count == 0 ? std::string() : fixed(static_cast<double>(matched) / row.count);
    out += fmt::format("{},{},{},{},{},{}\n", labeler::to_string(row.category), row.count,
                       matched, iec, fixed(row.mean_ade), fixed(row.mean_fde));
  }
  out += fmt::format("Average,{},{},{},{},{}\n", b.categories.total_count, matched_total,
                     fixed(b.iec), fixed(b.categories.average_ade),
                     fixed(b.categories.average_fde));
  return out;
}

std::string confusion_csv(const ReportBundle& b) {
  std::string out = "instructed";
  for (BenchCategory c : b.confusion.categories) out += fmt::format(",{}", labeler::to_string(c));
  out += fmt::format(",{}\n", kNone);
  for (std::size_t i = 0; i < b.confusion.categories.size(); ++i) {
    out += labeler::to_string(b.confusion.categories[i]);
    for (std::int64_t n : b.confusion.counts[i]) out += fmt::format(",{}", n);
    out += '\n';
  }
  return out;
}

std::string scatter_csv(const ReportBundle& b) {
  std::string out =
      "sample_id,instructed_category,index,t,instructed_x,instructed_y,estimated_x,estimated_y\n";
  for (const auto& p : b.scatter) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", p.sample_id, labeler::to_string(p.instructed),
                       p.index, fixed(p.t), fixed(p.instructed_x), fixed(p.instructed_y),
                       fixed(p.estimated_x), fixed(p.estimated_y));
  }
  return out;
}

std::vector<std::filesystem::path> emit_report(const ReportBundle& bundle,
                                               const std::filesystem::path& out_dir,
                                               std::span<const ReportFormat> formats) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  const auto emit = [&](const char* name, const std::string& text) {
    written.push_back(out_dir / name);
    write_file(written.back(), text);
  };
  for (ReportFormat f : formats) {
    if (f == ReportFormat::kJson) {
      emit("report.json", report_to_json(bundle).dump(2) + "\n");
    } else {
      emit("report.csv", report_csv(bundle));
      emit("confusion.csv", confusion_csv(bundle));
      emit("scatter.csv", scatter_csv(bundle));
    }
  }
  return written;
}

}  // namespace actbench::harness
