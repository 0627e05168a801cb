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

#include "actbench/labeler/rule_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string_view>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "actbench/error.hpp"

namespace actbench::labeler {
namespace {

namespace pt = boost::property_tree;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_plain(std::string_view s) {
  s = trim(s);
  if (s == "inf" || s == "+inf") return kUnbounded;
  if (s == "-inf") return -kUnbounded;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kSchema, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

// Plain decimal or a single "a/b" fraction.
double parse_scalar(std::string_view s) {
  const auto parts = split(s, '/');
  if (parts.size() == 1) return parse_plain(parts[0]);
  if (parts.size() == 2) return parse_plain(parts[0]) / parse_plain(parts[1]);
  throw Error(ErrorCode::kSchema, "malformed number: '" + std::string(s) + "'");
}

std::vector<double> parse_tuple(std::string_view s, std::size_t arity) {
  const auto parts = split(s, ':');
  if (parts.size() != arity) {
    throw Error(ErrorCode::kSchema,
                "band '" + std::string(s) + "' needs " + std::to_string(arity) + " fields");
  }
  std::vector<double> out;
  for (auto p : parts) out.push_back(parse_scalar(p));
  return out;
}

std::string fmt_num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

struct Binding {
  std::function<void(std::string_view)> read;
  std::function<std::string()> write;
};

Binding scalar(double& target) {
  return {[&target](std::string_view s) { target = parse_scalar(s); },
          [&target] { return fmt_num(target); }};
}

Binding bands(std::vector<LengthBand>& target) {
  return {[&target](std::string_view s) {
            target.clear();
            for (auto item : split(s, ',')) {
              const auto v = parse_tuple(item, 3);
              target.push_back({v[0], v[1], v[2]});
            }
          },
          [&target] {
            std::string out;
            for (const auto& b : target) {
              if (!out.empty()) out += ", ";
              out += fmt_num(b.lo) + ":" + fmt_num(b.hi) + ":" + fmt_num(b.value);
            }
            return out;
          }};
}

Binding decel_bands(std::vector<DecelBand>& target) {
  return {[&target](std::string_view s) {
            target.clear();
            for (auto item : split(s, ',')) {
              const auto v = parse_tuple(item, 4);
              target.push_back({v[0], v[1], v[2], v[3]});
            }
          },
          [&target] {
            std::string out;
            for (const auto& b : target) {
              if (!out.empty()) out += ", ";
              out += fmt_num(b.lo) + ":" + fmt_num(b.hi) + ":" + fmt_num(b.acceleration_max) +
                     ":" + fmt_num(b.interval_delta_max);
            }
            return out;
          }};
}

Binding cascade(std::vector<ActionLabel>& target) {
  return {[&target](std::string_view s) {
            target.clear();
            for (auto item : split(s, ',')) {
              const auto label = action_label_from_string(item);
              if (!label) {
                throw Error(ErrorCode::kSchema, "unknown label in cascade: '" +
                                                    std::string(item) + "'");
              }
              target.push_back(*label);
            }
          },
          [&target] {
            std::string out;
            for (auto l : target) {
              if (!out.empty()) out += ", ";
              out += to_string(l);
            }
            return out;
          }};
}

using Section = std::vector<std::pair<std::string, Binding>>;
using Schema = std::vector<std::pair<std::string, Section>>;

Section shifting_section(ShiftingRule& r) {
  return {{"lr_div_abs_min", scalar(r.lr_div_abs_min)},
          {"angle_mid_min", scalar(r.angle_mid_min)},
          {"angle_last_max", scalar(r.angle_last_max)}};
}

Section curving_section(CurvingRule& r) {
  return {{"length_min", scalar(r.length_min)},
          {"lr_div_bands", bands(r.lr_div_bands)},
          {"closest_interval_min", scalar(r.closest_interval_min)}};
}

Section straight_section(StraightRule& r) {
  return {{"length_min", scalar(r.length_min)},
          {"length_max", scalar(r.length_max)},
          {"lr_div_bands", bands(r.lr_div_bands)},
          {"interval_delta_slope", scalar(r.interval_delta_slope)}};
}

// Section order is the canonical write order.
Schema schema_for(RuleConfig& c) {
  return {
      {"cascade", {{"order", cascade(c.cascade)}}},
      {"shifting_towards_right", shifting_section(c.shifting_towards_right)},
      {"shifting_towards_left", shifting_section(c.shifting_towards_left)},
      {"curving_to_right", curving_section(c.curving_to_right)},
      {"curving_to_left", curving_section(c.curving_to_left)},
      {"starting",
       {{"length_min", scalar(c.starting.length_min)},
        {"length_max", scalar(c.starting.length_max)},
        {"closest_interval_max", scalar(c.starting.closest_interval_max)},
        {"interval_1_over_4_max", scalar(c.starting.interval_1_over_4_max)},
        {"interval_delta_min", scalar(c.starting.interval_delta_min)}}},
      {"stopping",
       {{"length_min", scalar(c.stopping.length_min)},
        {"furthest_interval_max", scalar(c.stopping.furthest_interval_max)},
        {"interval_3_over_4_max", scalar(c.stopping.interval_3_over_4_max)},
        {"closest_interval_min", scalar(c.stopping.closest_interval_min)},
        {"closest_minus_furthest_min", scalar(c.stopping.closest_minus_furthest_min)}}},
      {"stopped", {{"length_max", scalar(c.stopped.length_max)}}},
      {"accelerating",
       {{"lr_div_bands", bands(c.accelerating.lr_div_bands)},
        {"acceleration_bands", bands(c.accelerating.acceleration_bands)},
        {"closest_interval_min", scalar(c.accelerating.closest_interval_min)}}},
      {"decelerating",
       {{"lr_div_bands", bands(c.decelerating.lr_div_bands)},
        {"bands", decel_bands(c.decelerating.bands)},
        {"furthest_interval_min", scalar(c.decelerating.furthest_interval_min)}}},
      {"straight_const_ls", straight_section(c.straight_const_ls)},
      {"straight_const_hs", straight_section(c.straight_const_hs)},
  };
}

void check_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kParameter, what + " must be finite");
}

void check_bands(const std::vector<LengthBand>& bs, const std::string& what) {
  for (const auto& b : bs) {
    check_finite(b.lo, what + " band lower bound");
    check_finite(b.value, what + " band value");
    if (std::isnan(b.hi) || b.hi < b.lo) {
      throw Error(ErrorCode::kParameter, what + " band has hi < lo");
    }
  }
}

}  // namespace

void RuleConfig::validate() const {
  std::vector<ActionLabel> sorted = cascade;
  std::sort(sorted.begin(), sorted.end());
  std::vector<ActionLabel> expected(kRuleLabels.begin(), kRuleLabels.end());
  std::sort(expected.begin(), expected.end());
  if (sorted != expected) {
    throw Error(ErrorCode::kParameter, "cascade must list each of the eleven labels once");
  }
  for (const auto* r : {&shifting_towards_right, &shifting_towards_left}) {
    check_finite(r->lr_div_abs_min, "shifting lr_div_abs_min");
    check_finite(r->angle_mid_min, "shifting angle_mid_min");
    check_finite(r->angle_last_max, "shifting angle_last_max");
  }
  for (const auto* r : {&curving_to_right, &curving_to_left}) {
    check_finite(r->length_min, "curving length_min");
    check_finite(r->closest_interval_min, "curving closest_interval_min");
    check_bands(r->lr_div_bands, "curving lr_div");
  }
  for (double v : {starting.length_min, starting.length_max, starting.closest_interval_max,
                   starting.interval_1_over_4_max, starting.interval_delta_min}) {
    check_finite(v, "starting threshold");
  }
  for (double v : {stopping.length_min, stopping.furthest_interval_max,
                   stopping.interval_3_over_4_max, stopping.closest_interval_min,
                   stopping.closest_minus_furthest_min}) {
    check_finite(v, "stopping threshold");
  }
  check_finite(stopped.length_max, "stopped length_max");
  check_bands(accelerating.lr_div_bands, "accelerating lr_div");
  check_bands(accelerating.acceleration_bands, "accelerating acceleration");
  check_finite(accelerating.closest_interval_min, "accelerating closest_interval_min");
  check_bands(decelerating.lr_div_bands, "decelerating lr_div");
  for (const auto& b : decelerating.bands) {
    check_finite(b.lo, "decelerating band lower bound");
    check_finite(b.acceleration_max, "decelerating acceleration_max");
    check_finite(b.interval_delta_max, "decelerating interval_delta_max");
    if (std::isnan(b.hi) || b.hi < b.lo) {
      throw Error(ErrorCode::kParameter, "decelerating band has hi < lo");
    }
  }
  check_finite(decelerating.furthest_interval_min, "decelerating furthest_interval_min");
  for (const auto* r : {&straight_const_ls, &straight_const_hs}) {
    check_finite(r->length_min, "straight length_min");
    if (std::isnan(r->length_max)) throw Error(ErrorCode::kParameter, "straight length_max is NaN");
    check_finite(r->interval_delta_slope, "straight interval_delta_slope");
    check_bands(r->lr_div_bands, "straight lr_div");
  }
}

RuleConfig parse_rule_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kSchema, std::string("rule config: ") + e.what());
  }
  RuleConfig cfg;
  Schema schema = schema_for(cfg);
  for (const auto& [section_name, section_tree] : tree) {
    auto sec = std::find_if(schema.begin(), schema.end(),
                            [&](const auto& s) { return s.first == section_name; });
    if (sec == schema.end() || section_tree.empty()) {
      throw Error(ErrorCode::kSchema, "unknown rule config section '" + section_name + "'");
    }
    for (const auto& [key, value] : section_tree) {
      auto binding = std::find_if(sec->second.begin(), sec->second.end(),
                                  [&](const auto& b) { return b.first == key; });
      if (binding == sec->second.end()) {
        throw Error(ErrorCode::kSchema, "unknown key '" + key + "' in [" + section_name + "]");
      }
      try {
        binding->second.read(value.data());
      } catch (const Error& e) {
        throw Error(ErrorCode::kSchema, "[" + section_name + "] " + key + ": " + e.what());
      }
    }
  }
  cfg.validate();
  return cfg;
}

RuleConfig load_rule_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open rule config " + path);
  return parse_rule_config(in);
}

std::string write_rule_config(const RuleConfig& cfg) {
  RuleConfig copy = cfg;
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, section] : schema_for(copy)) {
    if (!first) out << '\n';
    first = false;
    out << '[' << name << "]\n";
    for (const auto& [key, binding] : section) out << key << " = " << binding.write() << '\n';
  }
  return out.str();
}

}  // namespace actbench::labeler
