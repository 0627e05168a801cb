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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "actbench/labeler/action_label.hpp"
#include "actbench/traj_core/trajectory.hpp"

namespace actbench::metrics {

using labeler::BenchCategory;

/// One instructed/estimated action pair. An absent estimate never matches.
struct LabelPair {
  BenchCategory instructed;
  std::optional<BenchCategory> estimated;
  std::string sample_id;
};

/// Instruction-execution consistency: fraction of pairs whose estimated
/// category equals the instructed one. Throws kEmptyInput on no pairs.
double iec(std::span<const LabelPair> pairs);

enum class DistanceKind { kAde, kFde };

struct TrajectoryDistance {
  DistanceKind kind;
  double value;  // meters
};

/// Mean Euclidean distance between corresponding positions. Both
/// trajectories must share the frame kind and point count; call
/// traj::resample_by_time first when they do not (kAlignment otherwise).
double ade(const traj::Trajectory& instructed, const traj::Trajectory& estimated);

/// Euclidean distance between the final positions.
double fde(const traj::Trajectory& instructed, const traj::Trajectory& estimated);

TrajectoryDistance distance(DistanceKind kind, const traj::Trajectory& instructed,
                            const traj::Trajectory& estimated);

/// Counts of (instructed row, estimated column). Columns are `categories`
/// followed by one trailing column for absent estimates.
struct ConfusionMatrix {
  std::vector<BenchCategory> categories;
  std::vector<std::vector<std::int64_t>> counts;
  std::vector<std::vector<double>> row_ratios;  // all-zero rows stay zero

  std::size_t none_column() const { return categories.size(); }
  std::int64_t total() const;
  std::int64_t diagonal() const;
};

/// Throws kSchema when a pair names a category missing from `categories`.
ConfusionMatrix confusion_matrix(std::span<const LabelPair> pairs,
                                 std::span<const BenchCategory> categories);

struct CategoryRecord {
  BenchCategory category;
  double ade;
  double fde;
};

struct CategoryRow {
  BenchCategory category;
  std::size_t count = 0;
  std::optional<double> mean_ade;  // empty exactly when count == 0
  std::optional<double> mean_fde;
};

/// Per-category means in kBenchCategories order plus an overall row taken
/// over all records (record-weighted, not a mean of category means).
struct CategoryReport {
  std::vector<CategoryRow> rows;
  std::size_t total_count = 0;
  std::optional<double> average_ade;
  std::optional<double> average_fde;
};

CategoryReport aggregate_by_category(std::span<const CategoryRecord> records);

}  // namespace actbench::metrics
