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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "actbench/bench/templates.hpp"
#include "actbench/traj_core/trajectory.hpp"
#include "actbench/traj_core/trajectory_io.hpp"

namespace actbench::bench {

inline constexpr double kDefaultSpeedThresholdKmh = 10.0;

/// Splits a global scene into overlapping windows, each re-anchored to its
/// first pose with timestamps rebased to zero. Yields
/// floor((len - window) / stride) + 1 windows, none when len < window.
std::vector<traj::Trajectory> slice_windows(const traj::Trajectory& scene, std::size_t window,
                                            std::size_t stride);

struct ContextSegment {
  std::string sample_id;  // "<scene>@<first frame, zero-padded>"
  std::string scene_id;
  std::size_t first_frame = 0;
  std::size_t last_frame = 0;  // inclusive
  traj::Trajectory trajectory;

  std::size_t length() const { return trajectory.size(); }
};

std::string context_sample_id(const std::string& scene_id, std::size_t first_frame);

struct ContextOptions {
  std::size_t window = 44;
  std::size_t stride = 1;
  std::size_t context_len = 10;
};

/// Context segments of every window: the first context_len poses of each.
std::vector<ContextSegment> extract_contexts(std::span<const traj::TrajectoryRecord> scenes,
                                             const ContextOptions& opts);

/// Keep iff |context_kmh - template_kmh| <= threshold.
bool speed_filter(double context_kmh, double template_kmh, double threshold_kmh);
bool speed_filter(const ContextSegment& context, const TrajectoryTemplate& tmpl,
                  double threshold_kmh = kDefaultSpeedThresholdKmh);

/// One evaluation unit: a context joined to a template instruction. Per-frame
/// instructions live with the template, see write_template_table.
struct BenchmarkPair {
  std::string sample_id;  // "<context sample id>/<template id>"
  ContextSegment context;
  std::string template_id;
  BenchCategory instructed_category;
  double context_speed_kmh = 0.0;
  double template_speed_kmh = 0.0;
  traj::Trajectory instruction;  // full intended path, ego frame
};

using CategoryCounts = std::array<std::size_t, labeler::kBenchCategories.size()>;

struct BenchmarkResult {
  std::vector<BenchmarkPair> pairs;  // ordered by (scene, frame, template id)
  CategoryCounts counts{};
};

struct AssemblyOptions {
  double speed_threshold_kmh = kDefaultSpeedThresholdKmh;
};

/// Cross product of contexts and templates, speed filtered, minus any pair
/// whose id or context id is in `exclusions`. Throws kIntegrity on duplicate
/// context or template ids.
BenchmarkResult assemble_benchmark(std::span<const ContextSegment> contexts,
                                   std::span<const TrajectoryTemplate> templates,
                                   const std::set<std::string>& exclusions,
                                   const AssemblyOptions& opts = {});

/// Newline-delimited ids; blank lines and lines starting with '#' are skipped.
std::set<std::string> read_exclusions(std::istream& in);

nlohmann::json pair_to_json(const BenchmarkPair& pair);
BenchmarkPair pair_from_json(const nlohmann::json& j);

void write_manifest(std::ostream& out, std::span<const BenchmarkPair> pairs);
std::vector<BenchmarkPair> read_manifest(std::istream& in);
std::vector<BenchmarkPair> read_manifest_file(const std::string& path);

// Template table JSONL, one line per template:
//   {"template_id", "category", "nominal_speed_kmh", "window_points",
//    "path": trajectory, "schedule": [t_l...],
//    "per_frame": [{"anchor": [x, y, t, heading], "rows": [[x, y, t_l, heading]...]}...]}
nlohmann::json template_to_json(const TrajectoryTemplate& tmpl);
TrajectoryTemplate template_from_json(const nlohmann::json& j);
void write_template_table(std::ostream& out, std::span<const TrajectoryTemplate> templates);
std::vector<TrajectoryTemplate> read_template_table(std::istream& in);

/// "category,pairs" rows in report order followed by a Total row.
std::string counts_csv(const CategoryCounts& counts);

}  // namespace actbench::bench
