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

#include <optional>
#include <span>

#include "actbench/traj_core/trajectory.hpp"

namespace actbench::traj {

struct Circle {
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 0.0;
  double rmse = 0.0;  // RMS of geometric residuals |dist(p, c) - r|
};

/// Fits above this radius are reported as straight (curvature < 1e-4 1/m).
inline constexpr double kStraightRadiusCap = 1.0e4;

/// Algebraic (Kasa) least-squares circle fit. Returns nullopt when the points
/// are collinear or the fitted radius exceeds kStraightRadiusCap.
/// Throws kInsufficientPoints for fewer than three points.
std::optional<Circle> fit_circle(std::span<const Vec2> points);

/// Shape descriptors of an ego-local trajectory used by the rule labeler.
/// Intervals are distances between consecutive waypoints. Optional fields are
/// empty when the quantity is degenerate (zero length, zero tangent, fewer
/// than three points, straight circle fit).
struct FeatureVector {
  double length = 0.0;             // arc length, m
  double closest_interval = 0.0;   // first segment, m
  double furthest_interval = 0.0;  // last segment, m
  double interval_delta = 0.0;     // furthest - closest, m
  std::optional<double> interval_1_over_4;  // head-quarter share of length
  std::optional<double> interval_3_over_4;  // tail-quarter share of length
  double lr_div = 0.0;                      // x of the final waypoint, m
  std::optional<double> angle_mid;          // deg, unsigned, from +y
  std::optional<double> angle_last;         // deg, unsigned, from +y
  std::optional<double> acceleration;       // m/s^2, LS slope of segment speed
  std::optional<double> circle_center_x_fh;
  std::optional<double> circle_center_x_lh;

  bool operator==(const FeatureVector&) const = default;
};

/// Requires an ego-frame trajectory with at least two points.
FeatureVector compute_features(const Trajectory& traj);

}  // namespace actbench::traj
