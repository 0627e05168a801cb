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
#include <optional>
#include <string_view>

namespace actbench::labeler {

/// Output classes of the rule labeler.
enum class ActionLabel {
  kShiftingTowardsRight,
  kShiftingTowardsLeft,
  kCurvingToRight,
  kCurvingToLeft,
  kStarting,
  kStopping,
  kStopped,
  kAccelerating,
  kDecelerating,
  kStraightConstLs,
  kStraightConstHs,
  kUnmatched,
};

/// The eleven rule classes in table order (unmatched excluded).
inline constexpr std::array<ActionLabel, 11> kRuleLabels = {
    ActionLabel::kShiftingTowardsRight, ActionLabel::kShiftingTowardsLeft,
    ActionLabel::kCurvingToRight,       ActionLabel::kCurvingToLeft,
    ActionLabel::kStarting,             ActionLabel::kStopping,
    ActionLabel::kStopped,              ActionLabel::kAccelerating,
    ActionLabel::kDecelerating,         ActionLabel::kStraightConstLs,
    ActionLabel::kStraightConstHs,
};

/// Benchmark action categories, in report order.
enum class BenchCategory {
  kCurvingToLeft,
  kCurvingToRight,
  kShiftingTowardsLeft,
  kShiftingTowardsRight,
  kStarting,
  kStopping,
  kAccelerating,
  kStraightConstantSpeed,
  kDecelerating,
};

inline constexpr std::array<BenchCategory, 9> kBenchCategories = {
    BenchCategory::kCurvingToLeft,        BenchCategory::kCurvingToRight,
    BenchCategory::kShiftingTowardsLeft,  BenchCategory::kShiftingTowardsRight,
    BenchCategory::kStarting,             BenchCategory::kStopping,
    BenchCategory::kAccelerating,         BenchCategory::kStraightConstantSpeed,
    BenchCategory::kDecelerating,
};

// snake_case names, e.g. "straight_const_hs".
std::string_view to_string(ActionLabel label);
std::optional<ActionLabel> action_label_from_string(std::string_view name);

// Human-readable names, e.g. "straight at constant speed".
std::string_view to_string(BenchCategory category);
std::optional<BenchCategory> bench_category_from_string(std::string_view name);

/// Both straight-constant classes collapse into one category; stopped and
/// unmatched have no benchmark category.
std::optional<BenchCategory> to_benchmark_category(ActionLabel label);

}  // namespace actbench::labeler
