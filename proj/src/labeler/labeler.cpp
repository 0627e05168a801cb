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

#include "actbench/labeler/labeler.hpp"

#include <cmath>
#include <optional>

#include "actbench/error.hpp"

namespace actbench::labeler {
namespace {

using traj::FeatureVector;

// Comparisons on a degenerate feature are false.
bool gt(const std::optional<double>& v, double threshold) { return v && *v > threshold; }
bool lt(const std::optional<double>& v, double threshold) { return v && *v < threshold; }

bool straight(const FeatureVector& f, const std::vector<LengthBand>& bands) {
  for (const auto& b : bands) {
    if (b.contains(f.length) && std::abs(f.lr_div) < b.value * f.length) return true;
  }
  return false;
}

bool shifting(const FeatureVector& f, const ShiftingRule& r, double sign) {
  return sign * f.lr_div > r.lr_div_abs_min && gt(f.angle_mid, r.angle_mid_min) &&
         lt(f.angle_last, r.angle_last_max);
}

bool curving(const FeatureVector& f, const CurvingRule& r, double sign) {
  if (!(f.length > r.length_min)) return false;
  bool divergent = false;
  for (const auto& b : r.lr_div_bands) {
    if (b.contains(f.length) && sign * f.lr_div >= b.value * f.length) {
      divergent = true;
      break;
    }
  }
  // Centers on the turning side: x > 0 for right, x < 0 for left.
  const auto on_side = [sign](const std::optional<double>& cx) { return cx && sign * *cx > 0.0; };
  return divergent && on_side(f.circle_center_x_fh) && on_side(f.circle_center_x_lh) &&
         f.closest_interval > r.closest_interval_min;
}

bool starting(const FeatureVector& f, const StartingRule& r) {
  return r.length_min < f.length && f.length < r.length_max &&
         f.closest_interval < r.closest_interval_max &&
         lt(f.interval_1_over_4, r.interval_1_over_4_max) &&
         f.interval_delta > r.interval_delta_min;
}

bool stopping(const FeatureVector& f, const StoppingRule& r) {
  return f.length > r.length_min && f.furthest_interval < r.furthest_interval_max &&
         lt(f.interval_3_over_4, r.interval_3_over_4_max) &&
         f.closest_interval > r.closest_interval_min &&
         f.closest_interval - f.furthest_interval > r.closest_minus_furthest_min;
}

bool accelerating(const FeatureVector& f, const AcceleratingRule& r) {
  if (!straight(f, r.lr_div_bands) || !(f.closest_interval > r.closest_interval_min)) {
    return false;
  }
  for (const auto& b : r.acceleration_bands) {
    if (b.contains(f.length) && gt(f.acceleration, b.value)) return true;
  }
  return false;
}

bool decelerating(const FeatureVector& f, const DeceleratingRule& r) {
  if (!straight(f, r.lr_div_bands) || !(f.furthest_interval > r.furthest_interval_min)) {
    return false;
  }
  for (const auto& b : r.bands) {
    if (b.contains(f.length) && lt(f.acceleration, b.acceleration_max) &&
        f.interval_delta < b.interval_delta_max) {
      return true;
    }
  }
  return false;
}

bool straight_constant(const FeatureVector& f, const StraightRule& r) {
  return r.length_min < f.length && f.length < r.length_max && straight(f, r.lr_div_bands) &&
         std::abs(f.interval_delta) <= r.interval_delta_slope * f.length;
}

}  // namespace

bool rule_holds(ActionLabel label, const FeatureVector& f, const RuleConfig& cfg) {
  switch (label) {
    case ActionLabel::kShiftingTowardsRight: return shifting(f, cfg.shifting_towards_right, 1.0);
    case ActionLabel::kShiftingTowardsLeft: return shifting(f, cfg.shifting_towards_left, -1.0);
    case ActionLabel::kCurvingToRight: return curving(f, cfg.curving_to_right, 1.0);
    case ActionLabel::kCurvingToLeft: return curving(f, cfg.curving_to_left, -1.0);
    case ActionLabel::kStarting: return starting(f, cfg.starting);
    case ActionLabel::kStopping: return stopping(f, cfg.stopping);
    case ActionLabel::kStopped: return f.length < cfg.stopped.length_max;
    case ActionLabel::kAccelerating: return accelerating(f, cfg.accelerating);
    case ActionLabel::kDecelerating: return decelerating(f, cfg.decelerating);
    case ActionLabel::kStraightConstLs: return straight_constant(f, cfg.straight_const_ls);
    case ActionLabel::kStraightConstHs: return straight_constant(f, cfg.straight_const_hs);
    case ActionLabel::kUnmatched: return false;
  }
  return false;
}

ActionLabel label_features(const FeatureVector& f, const RuleConfig& cfg) {
  for (ActionLabel label : cfg.cascade) {
    if (rule_holds(label, f, cfg)) return label;
  }
  return ActionLabel::kUnmatched;
}

ActionLabel label_trajectory(const traj::Trajectory& traj, const RuleConfig& cfg) {
  if (traj.frame().kind != traj::FrameKind::kEgo) {
    throw Error(ErrorCode::kFrame, "labeling requires an ego-local trajectory");
  }
  return label_features(traj::compute_features(traj), cfg);
}

}  // namespace actbench::labeler
