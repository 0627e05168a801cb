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


#include "actbench/bench/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "actbench/error.hpp"

namespace actbench::bench {
namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

}  // namespace

std::vector<traj::TrajectoryRecord> synthetic_scenes(const SyntheticSceneOptions& opts) {
  if (opts.frames < 2 || !(opts.fps > 0.0) || !(opts.max_speed_kmh > 0.0)) {
    throw Error(ErrorCode::kParameter, "synthetic scenes need >= 2 frames, fps > 0, speed > 0");
  }
  std::mt19937_64 rng(opts.seed);
  const double dt = 1.0 / opts.fps;
  const double vmax = opts.max_speed_kmh / 3.6;
  std::vector<traj::TrajectoryRecord> out;
  for (std::size_t s = 0; s < opts.count; ++s) {
    traj::Pose2D p{uniform(rng, -500.0, 500.0), uniform(rng, -500.0, 500.0),
                   uniform(rng, -std::numbers::pi, std::numbers::pi), 0.0};
    double v = uniform(rng, 0.0, vmax);
    double accel = 0.0;
    double yaw_rate = 0.0;
    std::vector<traj::Pose2D> pts;
    pts.reserve(opts.frames);
    for (std::size_t k = 0; k < opts.frames; ++k) {
      p.t = static_cast<double>(k) * dt;
      p.heading = traj::normalize_angle(p.heading);
      pts.push_back(p);
      // Piecewise-constant controls, redrawn about once a second.
      if (k % 10 == 0) {
        accel = uniform(rng, -2.0, 2.0);
        yaw_rate = uniform(rng, -1.0, 1.0) < 0.5 ? 0.0 : uniform(rng, -0.25, 0.25);
      }
      v = std::clamp(v + accel * dt, 0.0, vmax);
      p.heading += yaw_rate * dt;
      p.x += v * dt * std::sin(p.heading);
      p.y += v * dt * std::cos(p.heading);
    }
    out.push_back({fmt::format("scene-{:04d}", s),
                   traj::Trajectory(traj::Frame::global(), std::move(pts), opts.fps)});
  }
  return out;
}

}  // namespace actbench::bench
