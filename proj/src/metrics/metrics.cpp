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

#include "actbench/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "actbench/error.hpp"

namespace actbench::metrics {
namespace {

void check_comparable(const traj::Trajectory& a, const traj::Trajectory& b) {
  if (a.frame().kind != b.frame().kind) {
    throw Error(ErrorCode::kFrame, "trajectories are in different frames");
  }
}

double point_distance(const traj::Pose2D& a, const traj::Pose2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

double iec(std::span<const LabelPair> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyInput, "IEC needs at least one pair");
  std::size_t matches = 0;
  for (const auto& p : pairs) {
    if (p.estimated && *p.estimated == p.instructed) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(pairs.size());
}

double ade(const traj::Trajectory& instructed, const traj::Trajectory& estimated) {
  check_comparable(instructed, estimated);
  if (instructed.size() != estimated.size()) {
    throw Error(ErrorCode::kAlignment,
                "point counts differ (" + std::to_string(instructed.size()) + " vs " +
                    std::to_string(estimated.size()) +
                    "); resample_by_time onto shared timestamps first");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < instructed.size(); ++i) {
    sum += point_distance(instructed[i], estimated[i]);
  }
  return sum / static_cast<double>(instructed.size());
}

double fde(const traj::Trajectory& instructed, const traj::Trajectory& estimated) {
  check_comparable(instructed, estimated);
  if (instructed.size() == 0 || estimated.size() == 0) {
    throw Error(ErrorCode::kEmptyInput, "FDE needs non-empty trajectories");
  }
  return point_distance(instructed.back(), estimated.back());
}

TrajectoryDistance distance(DistanceKind kind, const traj::Trajectory& instructed,
                            const traj::Trajectory& estimated) {
  return {kind, kind == DistanceKind::kAde ? ade(instructed, estimated)
                                           : fde(instructed, estimated)};
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t t = 0;
  for (const auto& row : counts) {
    for (auto c : row) t += c;
  }
  return t;
}

std::int64_t ConfusionMatrix::diagonal() const {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) d += counts[i][i];
  return d;
}

ConfusionMatrix confusion_matrix(std::span<const LabelPair> pairs,
                                 std::span<const BenchCategory> categories) {
  ConfusionMatrix m;
  m.categories.assign(categories.begin(), categories.end());
  const std::size_t k = categories.size();
  m.counts.assign(k, std::vector<std::int64_t>(k + 1, 0));
  const auto index_of = [&](BenchCategory c, const std::string& id) {
    const auto it = std::find(categories.begin(), categories.end(), c);
    if (it == categories.end()) {
      throw Error(ErrorCode::kSchema, "sample " + id + ": category '" +
                                          std::string(labeler::to_string(c)) +
                                          "' is not in the matrix");
    }
    return static_cast<std::size_t>(it - categories.begin());
  };
  for (const auto& p : pairs) {
    const std::size_t row = index_of(p.instructed, p.sample_id);
    const std::size_t col = p.estimated ? index_of(*p.estimated, p.sample_id) : k;
    ++m.counts[row][col];
  }
  m.row_ratios.assign(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t row_total = 0;
    for (auto c : m.counts[i]) row_total += c;
    if (row_total == 0) continue;
    for (std::size_t j = 0; j <= k; ++j) {
      m.row_ratios[i][j] = static_cast<double>(m.counts[i][j]) / static_cast<double>(row_total);
    }
  }
  return m;
}

CategoryReport aggregate_by_category(std::span<const CategoryRecord> records) {
  CategoryReport report;
  double all_ade = 0.0;
  double all_fde = 0.0;
  for (BenchCategory c : labeler::kBenchCategories) {
    CategoryRow row;
    row.category = c;
    double sum_ade = 0.0;
    double sum_fde = 0.0;
    for (const auto& r : records) {
      if (r.category != c) continue;
      ++row.count;
      sum_ade += r.ade;
      sum_fde += r.fde;
    }
    if (row.count > 0) {
      row.mean_ade = sum_ade / static_cast<double>(row.count);
      row.mean_fde = sum_fde / static_cast<double>(row.count);
    }
    report.rows.push_back(row);
  }
  for (const auto& r : records) {
    all_ade += r.ade;
    all_fde += r.fde;
  }
  report.total_count = records.size();
  if (!records.empty()) {
    report.average_ade = all_ade / static_cast<double>(records.size());
    report.average_fde = all_fde / static_cast<double>(records.size());
  }
  return report;
}

}  // namespace actbench::metrics
