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

#include "actbench/traj_core/features.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "actbench/error.hpp"

namespace actbench::traj {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Unsigned angle between a tangent and +y, degrees. Empty for a zero tangent.
std::optional<double> angle_from_forward(Vec2 tangent) {
  if (tangent.x == 0.0 && tangent.y == 0.0) return std::nullopt;
  return std::atan2(std::abs(tangent.x), tangent.y) * kRadToDeg;
}

Vec2 central_tangent(std::span<const Vec2> p, std::size_t i) {
  const std::size_t lo = i == 0 ? 0 : i - 1;
  const std::size_t hi = i + 1 < p.size() ? i + 1 : p.size() - 1;
  return {p[hi].x - p[lo].x, p[hi].y - p[lo].y};
}

std::optional<double> half_center_x(std::span<const Vec2> half) {
  if (half.size() < 3) return std::nullopt;
  const auto circle = fit_circle(half);
  if (!circle) return std::nullopt;
  return circle->center_x;
}

// Least-squares slope of segment speed against segment mid-time.
std::optional<double> speed_trend(const Trajectory& traj, std::span<const double> intervals) {
  const std::size_t m = intervals.size();
  if (m < 2) return std::nullopt;
  std::vector<double> tm(m);
  std::vector<double> v(m);
  double tbar = 0.0;
  double vbar = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dt = traj[i + 1].t - traj[i].t;
    tm[i] = 0.5 * (traj[i].t + traj[i + 1].t);
    v[i] = intervals[i] / dt;
    tbar += tm[i];
    vbar += v[i];
  }
  tbar /= static_cast<double>(m);
  vbar /= static_cast<double>(m);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    num += (tm[i] - tbar) * (v[i] - vbar);
    den += (tm[i] - tbar) * (tm[i] - tbar);
  }
  if (!(den > 0.0)) return std::nullopt;
  return num / den;
}

}  // namespace

FeatureVector compute_features(const Trajectory& traj) {
  if (traj.frame().kind != FrameKind::kEgo) {
    throw Error(ErrorCode::kFrame, "features are defined on ego-local trajectories");
  }
  const std::size_t n = traj.size();
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientPoints, "features need at least two points");
  }
  const std::vector<Vec2> p = traj.positions();

  std::vector<double> intervals(n - 1);
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    intervals[i] = std::hypot(p[i + 1].x - p[i].x, p[i + 1].y - p[i].y);
    length += intervals[i];
  }

  FeatureVector f;
  f.length = length;
  f.closest_interval = intervals.front();
  f.furthest_interval = intervals.back();
  f.interval_delta = f.furthest_interval - f.closest_interval;
  f.lr_div = p.back().x;

  // Quarter boundaries in point indices; the head and tail spans cover the
  // same number of segments.
  const std::size_t segments = n - 1;
  const std::size_t head_end = segments / 4;
  const std::size_t tail_begin = segments - head_end;
  if (length > 0.0) {
    double head = 0.0;
    double tail = 0.0;
    for (std::size_t i = 0; i < head_end; ++i) head += intervals[i];
    for (std::size_t i = tail_begin; i < segments; ++i) tail += intervals[i];
    f.interval_1_over_4 = head / length;
    f.interval_3_over_4 = tail / length;
  }

  f.angle_mid = angle_from_forward(central_tangent(p, (n - 1) / 2));
  f.angle_last = angle_from_forward({p[n - 1].x - p[n - 2].x, p[n - 1].y - p[n - 2].y});
  f.acceleration = speed_trend(traj, intervals);

  const std::span<const Vec2> all(p);
  f.circle_center_x_fh = half_center_x(all.first(n / 2));
  f.circle_center_x_lh = half_center_x(all.subspan(n / 2));
  return f;
}

}  // namespace actbench::traj
