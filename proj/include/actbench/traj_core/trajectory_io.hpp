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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "actbench/traj_core/trajectory.hpp"

namespace actbench::traj {

// JSONL interchange, one record per line:
//   {"id": str, "frame": "global"|"ego", "fps": num,
//    "points": [{"t": s, "x": m, "y": m, "heading": rad}, ...],
//    "anchor": {"t", "x", "y", "heading"}}
// anchor is optional and only written for ego trajectories whose anchor is
// not the identity pose.

struct TrajectoryRecord {
  std::string id;
  Trajectory trajectory;
};

nlohmann::json trajectory_to_json(const Trajectory& traj);
/// Throws kSchema on missing or mistyped fields, kInvalidInput on
/// trajectory invariant violations.
Trajectory trajectory_from_json(const nlohmann::json& j);

nlohmann::json record_to_json(const TrajectoryRecord& record);
TrajectoryRecord record_from_json(const nlohmann::json& j);

/// Reads every non-blank line; errors are rethrown with the 1-based line number.
std::vector<TrajectoryRecord> read_trajectory_jsonl(std::istream& in);
std::vector<TrajectoryRecord> read_trajectory_jsonl_file(const std::string& path);

void write_trajectory_jsonl(std::ostream& out, const std::vector<TrajectoryRecord>& records);

}  // namespace actbench::traj
