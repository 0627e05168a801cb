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


#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "actbench/bench/benchmark.hpp"
#include "actbench/labeler/rule_config.hpp"
#include "actbench/metrics/metrics.hpp"
#include "actbench/traj_core/trajectory.hpp"

namespace actbench::harness {

using labeler::BenchCategory;

inline constexpr std::string_view kReportSchema = "actbench.report/1";

// Rollout JSONL, one object per line:
//   {"sample_id": str, "producer": str,
//    "estimated_category": str (optional),
//    "estimated_trajectory": {"frame": "ego", "fps": .., "points": [..]}}
// estimated_category is a category name ("curving to left", ...), an action
// label name ("straight_const_hs", ...) mapped to its category, or "none".
// When absent the category is derived from the trajectory by the labeler.
struct RolloutRecord {
  std::string sample_id;
  std::string producer;
  bool category_provided = false;
  std::optional<BenchCategory> estimated_category;
  traj::Trajectory estimated_trajectory;
};

nlohmann::json rollout_to_json(const RolloutRecord& record);
RolloutRecord rollout_from_json(const nlohmann::json& j);
void write_rollouts(std::ostream& out, std::span<const RolloutRecord> records);

struct RolloutReject {
  std::size_t line = 0;  // 1-based, 0 when not tied to an input line
  std::string sample_id;
  std::string reason;
};

struct IngestResult {
  std::vector<RolloutRecord> records;
  std::vector<RolloutReject> rejects;
};

/// Validates every line. Bad lines, duplicate ids and (when known_ids is
/// given) ids outside it become rejects. Throws kValidation when no line is
/// valid.
IngestResult ingest_rollouts(std::istream& in, const std::set<std::string>* known_ids = nullptr);
IngestResult ingest_rollouts_file(const std::string& path,
                                  const std::set<std::string>* known_ids = nullptr);

/// Reference producer: the pair's instruction plus isotropic Gaussian noise
/// on positions. With probability drop_rate the reported category is swapped
/// for a different one. Deterministic in (sample_id, seed).
struct OracleConfig {
  double noise_sigma = 0.0;  // meters
  std::uint64_t seed = 0;
  double drop_rate = 0.0;
  std::string producer = "oracle";
};

RolloutRecord oracle_rollout(const bench::BenchmarkPair& pair, const OracleConfig& cfg,
                             const labeler::RuleConfig& rules = {});

struct EvalOptions {
  labeler::RuleConfig rules;
  std::string conditioning = "unspecified";  // e.g. "per-frame" or "per-round"
  std::optional<std::string> created_at;     // omitted from reports when empty
};

enum class CategorySource { kProvided, kDerived };
std::string_view to_string(CategorySource source);

struct SampleResult {
  std::string sample_id;
  std::string template_id;
  std::string producer;
  BenchCategory instructed;
  std::optional<BenchCategory> estimated;
  CategorySource source;
  double ade;
  double fde;
};

struct ScatterPoint {
  std::string sample_id;
  BenchCategory instructed;
  std::size_t index;
  double t;
  double instructed_x;
  double instructed_y;
  double estimated_x;
  double estimated_y;
};

/// Every manifest pair is exactly one of evaluated, a gap or rejected.
struct Coverage {
  std::size_t manifest_pairs = 0;
  std::size_t evaluated = 0;
  std::vector<std::string> gaps;             // no rollout line names the pair
  std::vector<RolloutReject> rejected;       // one per pair whose rollout was unusable
  std::vector<RolloutReject> unattributed;   // bad lines not tied to any pair
  std::vector<std::string> unresolved;       // valid rollouts for ids outside the manifest
};

struct ReportMetadata {
  std::string schema{kReportSchema};
  std::string tool_version;
  std::string rules_digest;
  std::string manifest_digest;
  std::vector<std::string> producers;
  std::string conditioning;
  std::optional<std::string> created_at;
};

struct ReportBundle {
  ReportMetadata metadata;
  std::vector<SampleResult> samples;  // ordered by sample_id
  double iec = 0.0;
  metrics::ConfusionMatrix confusion;
  metrics::CategoryReport categories;
  std::vector<ScatterPoint> scatter;
  Coverage coverage;
};

/// Joins rollouts to manifest pairs by sample_id. Estimated trajectories are
/// resampled onto the instruction timestamps before ADE/FDE and labeling.
/// Throws kCoverage when no pair can be evaluated.
ReportBundle run_eval(std::span<const bench::BenchmarkPair> manifest, const IngestResult& rollouts,
                      const EvalOptions& opts = {});

/// 64-bit FNV-1a, hex encoded.
std::string digest(std::string_view text);

enum class ReportFormat { kJson, kCsv };

nlohmann::json report_to_json(const ReportBundle& bundle);

/// Writes report.json and/or report.csv, confusion.csv, scatter.csv into
/// out_dir (created if needed). Returns the written paths.
std::vector<std::filesystem::path> emit_report(const ReportBundle& bundle,
                                               const std::filesystem::path& out_dir,
                                               std::span<const ReportFormat> formats);

std::string report_csv(const ReportBundle& bundle);
std::string confusion_csv(const ReportBundle& bundle);
std::string scatter_csv(const ReportBundle& bundle);

}  // namespace actbench::harness
