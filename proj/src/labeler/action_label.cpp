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

#include "actbench/labeler/action_label.hpp"

#include <utility>

namespace actbench::labeler {
namespace {

constexpr std::pair<ActionLabel, std::string_view> kLabelNames[] = {
    {ActionLabel::kShiftingTowardsRight, "shifting_towards_right"},
    {ActionLabel::kShiftingTowardsLeft, "shifting_towards_left"},
    {ActionLabel::kCurvingToRight, "curving_to_right"},
    {ActionLabel::kCurvingToLeft, "curving_to_left"},
    {ActionLabel::kStarting, "starting"},
    {ActionLabel::kStopping, "stopping"},
    {ActionLabel::kStopped, "stopped"},
    {ActionLabel::kAccelerating, "accelerating"},
    {ActionLabel::kDecelerating, "decelerating"},
    {ActionLabel::kStraightConstLs, "straight_const_ls"},
    {ActionLabel::kStraightConstHs, "straight_const_hs"},
    {ActionLabel::kUnmatched, "unmatched"},
};

constexpr std::pair<BenchCategory, std::string_view> kCategoryNames[] = {
    {BenchCategory::kCurvingToLeft, "curving to left"},
    {BenchCategory::kCurvingToRight, "curving to right"},
    {BenchCategory::kShiftingTowardsLeft, "shifting towards left"},
    {BenchCategory::kShiftingTowardsRight, "shifting towards right"},
    {BenchCategory::kStarting, "starting"},
    {BenchCategory::kStopping, "stopping"},
    {BenchCategory::kAccelerating, "accelerating"},
    {BenchCategory::kStraightConstantSpeed, "straight at constant speed"},
    {BenchCategory::kDecelerating, "decelerating"},
};

}  // namespace

std::string_view to_string(ActionLabel label) {
  for (const auto& [l, name] : kLabelNames) {
    if (l == label) return name;
  }
  return "unmatched";
}

std::optional<ActionLabel> action_label_from_string(std::string_view name) {
  for (const auto& [l, n] : kLabelNames) {
    if (n == name) return l;
  }
  return std::nullopt;
}

std::string_view to_string(BenchCategory category) {
  for (const auto& [c, name] : kCategoryNames) {
    if (c == category) return name;
  }
  return "";
}

std::optional<BenchCategory> bench_category_from_string(std::string_view name) {
  for (const auto& [c, n] : kCategoryNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::optional<BenchCategory> to_benchmark_category(ActionLabel label) {
  switch (label) {
    case ActionLabel::kShiftingTowardsRight: return BenchCategory::kShiftingTowardsRight;
    case ActionLabel::kShiftingTowardsLeft: return BenchCategory::kShiftingTowardsLeft;
    case ActionLabel::kCurvingToRight: return BenchCategory::kCurvingToRight;
    case ActionLabel::kCurvingToLeft: return BenchCategory::kCurvingToLeft;
    case ActionLabel::kStarting: return BenchCategory::kStarting;
    case ActionLabel::kStopping: return BenchCategory::kStopping;
    case ActionLabel::kAccelerating: return BenchCategory::kAccelerating;
    case ActionLabel::kDecelerating: return BenchCategory::kDecelerating;
    case ActionLabel::kStraightConstLs:
    case ActionLabel::kStraightConstHs: return BenchCategory::kStraightConstantSpeed;
    case ActionLabel::kStopped:
    case ActionLabel::kUnmatched: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace actbench::labeler
