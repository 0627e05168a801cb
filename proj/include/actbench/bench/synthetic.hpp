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
#include <vector>

#include "actbench/traj_core/trajectory_io.hpp"

namespace actbench::bench {

struct SyntheticSceneOptions {
  std::size_t count = 4;
  std::size_t frames = 200;
  double fps = 10.0;
  double max_speed_kmh = 60.0;
  std::uint64_t seed = 1;
};

/// Smooth global-frame drives with random acceleration and yaw-rate walks,
/// including occasional stops. Same options give the same scenes everywhere.
std::vector<traj::TrajectoryRecord> synthetic_scenes(const SyntheticSceneOptions& opts);

}  // namespace actbench::bench
