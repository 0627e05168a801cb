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
#include <limits>
#include <string>
#include <vector>

#include "actbench/labeler/action_label.hpp"

namespace actbench::labeler {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Threshold that applies while lo <= length <= hi (meters).
struct LengthBand {
  double lo = 0.0;
  double hi = kUnbounded;
  double value = 0.0;

  bool contains(double length) const { return lo <= length && length <= hi; }
  bool operator==(const LengthBand&) const = default;
};

/// Paired deceleration thresholds sharing one length range.
struct DecelBand {
  double lo = 0.0;
  double hi = kUnbounded;
  double acceleration_max = 0.0;
  double interval_delta_max = 0.0;

  bool contains(double length) const { return lo <= length && length <= hi; }
  bool operator==(const DecelBand&) const = default;
};

// Straightness: abs(lr_div) < value * length in a band containing length.
inline const std::vector<LengthBand> kDefaultStraightnessBands = {
    {3.0, 10.0, 0.7 / 10.0}, {10.0, kUnbounded, 2.5 / 30.0}};

struct ShiftingRule {
  double lr_div_abs_min = 1.3;  // signed by direction
  double angle_mid_min = 4.0;
  double angle_last_max = 2.3;
  bool operator==(const ShiftingRule&) const = default;
};

struct CurvingRule {
  double length_min = 3.0;
  // |lr_div| >= value * length, signed by direction.
  std::vector<LengthBand> lr_div_bands = {{3.0, 10.0, 0.9 / 10.0},
                                          {10.0, kUnbounded, 3.1 / 30.0}};
  double closest_interval_min = 0.005;
  bool operator==(const CurvingRule&) const = default;
};

struct StartingRule {
  double length_min = 2.0;
  double length_max = 15.0;
  double closest_interval_max = 0.005;
  double interval_1_over_4_max = 0.05;
  double interval_delta_min = 0.1;
  bool operator==(const StartingRule&) const = default;
};

struct StoppingRule {
  double length_min = 3.0;
  double furthest_interval_max = 0.03;
  double interval_3_over_4_max = 0.08;
  double closest_interval_min = 0.1;
  double closest_minus_furthest_min = 0.10;
  bool operator==(const StoppingRule&) const = default;
};

struct StoppedRule {
  double length_max = 0.01;
  bool operator==(const StoppedRule&) const = default;
};

struct AcceleratingRule {
  std::vector<LengthBand> lr_div_bands = kDefaultStraightnessBands;
  std::vector<LengthBand> acceleration_bands = {
      {3.0, 20.0, 0.18}, {20.0, 30.0, 0.3}, {30.0, 35.0, 0.26}};
  double closest_interval_min = 0.15;
  bool operator==(const AcceleratingRule&) const = default;
};

struct DeceleratingRule {
  std::vector<LengthBand> lr_div_bands = kDefaultStraightnessBands;
  std::vector<DecelBand> bands = {{5.0, 15.0, -0.17, -0.2},
                                  {15.0, 25.0, -0.3, -0.23},
                                  {25.0, 40.0, -0.26, -0.21},
                                  {40.0, 55.0, -0.26, -0.4}};
  double furthest_interval_min = 0.15;
  bool operator==(const DeceleratingRule&) const = default;
};

struct StraightRule {
  double length_min = 0.0;
  double length_max = kUnbounded;
  std::vector<LengthBand> lr_div_bands = kDefaultStraightnessBands;
  double interval_delta_slope = 0.5 / 40.0;  // |interval_delta| <= slope * length
  bool operator==(const StraightRule&) const = default;
};

/// Every numeric threshold of the labeling cascade plus its evaluation order.
/// Defaults reproduce the published table.
struct RuleConfig {
  std::vector<ActionLabel> cascade{kRuleLabels.begin(), kRuleLabels.end()};
  ShiftingRule shifting_towards_right;
  ShiftingRule shifting_towards_left;
  CurvingRule curving_to_right;
  CurvingRule curving_to_left;
  StartingRule starting;
  StoppingRule stopping;
  StoppedRule stopped;
  AcceleratingRule accelerating;
  DeceleratingRule decelerating;
  StraightRule straight_const_ls{3.0, 25.0, kDefaultStraightnessBands, 0.5 / 40.0};
  StraightRule straight_const_hs{28.0, kUnbounded, kDefaultStraightnessBands, 0.5 / 40.0};

  bool operator==(const RuleConfig&) const = default;

  /// Throws kParameter when a threshold is not finite, a band is inverted,
  /// or the cascade is not a permutation of the eleven rule labels.
  void validate() const;
};

/// INI-style text: one [section] per rule plus [cascade]. Keys omitted from
/// the file keep their defaults; unknown sections or keys are schema errors.
/// Scalars accept plain decimals or a single fraction such as "3.1/30".
/// Bands are comma-separated "lo:hi:value" triples ("lo:hi:acc:delta" for
/// decelerating); "inf" is accepted as an upper bound.
RuleConfig parse_rule_config(std::istream& in);
RuleConfig load_rule_config(const std::string& path);

/// Canonical text form; parse_rule_config(write_rule_config(c)) == c.
std::string write_rule_config(const RuleConfig& cfg);

}  // namespace actbench::labeler
