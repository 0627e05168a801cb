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

#include "actbench/labeler/action_label.hpp"
#include "actbench/labeler/rule_config.hpp"
#include "actbench/traj_core/features.hpp"
#include "actbench/traj_core/trajectory.hpp"

namespace actbench::labeler {

/// True when every condition of `label`'s rule holds. Degenerate features
/// (empty optionals) fail any condition that reads them. kUnmatched never holds.
bool rule_holds(ActionLabel label, const traj::FeatureVector& f, const RuleConfig& cfg);

/// First rule in cfg.cascade that holds, else kUnmatched.
ActionLabel label_features(const traj::FeatureVector& f, const RuleConfig& cfg);

/// Computes features and runs the cascade. Throws kFrame for non-ego input.
ActionLabel label_trajectory(const traj::Trajectory& traj, const RuleConfig& cfg);

}  // namespace actbench::labeler
