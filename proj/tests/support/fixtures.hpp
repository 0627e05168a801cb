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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "actbench/labeler/action_label.hpp"
#include "actbench/traj_core/trajectory.hpp"
#include "support/oracles.hpp"

// Synthetic 44-point trajectories built strictly inside the default rule bands.
namespace actbench::testing {

using labeler::ActionLabel;
using traj::Pose2D;
using traj::Trajectory;

inline Trajectory lateral_shift(double sign) {
  return sampled(44, [sign](double t) {
    const double u = std::clamp((t - 1.0) / 2.3, 0.0, 1.0);
    return std::pair{sign * 1.75 * (1 - std::cos(std::numbers::pi * u)), 8.0 * t};
  });
}

inline Trajectory arc(double sign, double radius, double speed) {
  return sampled(44, [=](double t) {
    const double a = speed * t / radius;
    return std::pair{sign * radius * (1 - std::cos(a)), radius * std::sin(a)};
  });
}

inline Trajectory longitudinal(double dwell, double v0, double accel) {
  return sampled(44, [=](double t) {
    const double tau = std::max(0.0, t - dwell);
    const double stop = accel < 0 ? v0 / -accel : INFINITY;
    const double s = std::min(tau, stop);
    return std::pair{0.0, v0 * s + 0.5 * accel * s * s};
  });
}

struct Fixture {
  const char* name;
  Trajectory traj;
  ActionLabel expected;
};

inline std::vector<Fixture> canonical_fixtures() {
  return {
      {"shift right", lateral_shift(1), ActionLabel::kShiftingTowardsRight},
      {"shift left", lateral_shift(-1), ActionLabel::kShiftingTowardsLeft},
      {"curve right", arc(1, 40, 8), ActionLabel::kCurvingToRight},
      {"curve left", arc(-1, 40, 8), ActionLabel::kCurvingToLeft},
      {"starting", longitudinal(1.5, 0, 1.5), ActionLabel::kStarting},
      {"stopping", longitudinal(0, 6, -3), ActionLabel::kStopping},
      {"stopped", straight_line(44, 0.0), ActionLabel::kStopped},
      {"accelerating", longitudinal(0, 5, 1), ActionLabel::kAccelerating},
      {"decelerating", longitudinal(0, 8, -1), ActionLabel::kDecelerating},
      {"straight ls", longitudinal(0, 5, 0), ActionLabel::kStraightConstLs},
      {"straight hs", longitudinal(0, 8, 0), ActionLabel::kStraightConstHs},
  };
}

// First half curves right; after a kink the second half curves right again
// from a leftward heading and ends pointing forward.
inline Trajectory shift_and_curve() {
  std::vector<Pose2D> pts;
  const auto arc_from = [&pts](Pose2D p, double curvature, int count) {
    for (int i = 0; i < count; ++i) {
      p.t = static_cast<double>(pts.size()) / 10.0;
      pts.push_back(p);
      const double h = p.heading + curvature * 0.8;
      p.x += (std::cos(p.heading) - std::cos(h)) / curvature;
      p.y += (std::sin(h) - std::sin(p.heading)) / curvature;
      p.heading = h;
    }
    return p;
  };
  Pose2D end = arc_from({0, 0, 0, 0}, 1.0 / 15.0, 22);
  end.heading = -0.3;
  arc_from(end, 1.0 / 56.0, 22);
  return Trajectory(traj::Frame::ego(), pts, 10.0);
}

}  // namespace actbench::testing
