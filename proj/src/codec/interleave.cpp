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

#include "actbench/codec/interleave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "actbench/error.hpp"

namespace actbench::codec {
namespace {

constexpr double kPadValue = -1.0;

void validate_frame(std::span<const Token> tokens, const CodecConfig& cfg, std::size_t step) {
  if (tokens.size() != cfg.tokens_per_frame) {
    throw Error(ErrorCode::kValidation, "step " + std::to_string(step) + ": expected " +
                                            std::to_string(cfg.tokens_per_frame) +
                                            " tokens, got " + std::to_string(tokens.size()));
  }
  for (Token t : tokens) {
    if (t >= cfg.vocab_size) {
      throw Error(ErrorCode::kValidation, "step " + std::to_string(step) + ": token " +
                                              std::to_string(t) + " outside vocabulary of " +
                                              std::to_string(cfg.vocab_size));
    }
  }
}

void validate_action(const ActionInstruction& a, const CodecConfig& cfg, std::size_t step) {
  const std::string where = "step " + std::to_string(step) + ": ";
  if (a.rows.size() != cfg.action_points) {
    throw Error(ErrorCode::kValidation, where + "expected " + std::to_string(cfg.action_points) +
                                            " action rows, got " + std::to_string(a.rows.size()));
  }
  for (const auto& row : a.rows) {
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kValidation, where + "non-finite action value");
    }
  }
  if (a.is_padding()) return;
  for (std::size_t i = 1; i < a.rows.size(); ++i) {
    if (a.rows[i][2] < a.rows[i - 1][2]) {
      throw Error(ErrorCode::kValidation, where + "action rows not ordered by t_l");
    }
  }
}

void append_step(InterleavedSequence& seq, std::span<const Token> tokens,
                 const ActionInstruction& action, std::uint32_t step) {
  const std::uint32_t n = seq.tokens_per_frame;
  for (std::uint32_t i = 0; i < n; ++i) {
    seq.elements.emplace_back(tokens[i]);
    seq.loss_mask.push_back(1);
    seq.temporal_ids.push_back(step);
    seq.spatial_ids.push_back(i);
  }
  for (std::uint32_t l = 0; l < seq.action_points; ++l) {
    seq.elements.emplace_back(action.rows[l]);
    seq.loss_mask.push_back(0);
    seq.temporal_ids.push_back(step);
    seq.spatial_ids.push_back(n + l);
  }
}

}  // namespace

CodecConfig CodecConfig::flat(std::uint32_t frames, std::uint32_t tokens_per_frame,
                              std::uint32_t action_points, std::uint64_t vocab_size) {
  CodecConfig cfg;
  cfg.frames_per_chunk = frames;
  cfg.tokens_per_frame = tokens_per_frame;
  cfg.action_points = action_points;
  cfg.vocab_size = vocab_size;
  cfg.image_height = 1;
  cfg.image_width = tokens_per_frame;
  cfg.downscale = 1;
  return cfg;
}

void CodecConfig::validate() const {
  if (frames_per_chunk == 0) throw Error(ErrorCode::kParameter, "frames_per_chunk must be >= 1");
  if (tokens_per_frame == 0) throw Error(ErrorCode::kParameter, "tokens_per_frame must be >= 1");
  if (vocab_size == 0 || vocab_size > (std::uint64_t{1} << 32)) {
    throw Error(ErrorCode::kParameter, "vocab_size must be in [1, 2^32]");
  }
  if (downscale == 0 || image_height % downscale != 0 || image_width % downscale != 0) {
    throw Error(ErrorCode::kParameter, "image dims must be multiples of the downscale factor");
  }
  const std::uint64_t grid =
      std::uint64_t{image_height / downscale} * std::uint64_t{image_width / downscale};
  if (grid != tokens_per_frame) {
    throw Error(ErrorCode::kParameter,
                "tokens_per_frame " + std::to_string(tokens_per_frame) + " != (H/D)*(W/D) = " +
                    std::to_string(grid));
  }
}

bool ActionInstruction::is_padding() const {
  return std::all_of(rows.begin(), rows.end(), [](const ActionPoint& r) {
    return r[0] == kPadValue && r[1] == kPadValue && r[2] == kPadValue;
  });
}

ActionInstruction padding_action(const CodecConfig& cfg) {
  return {std::vector<ActionPoint>(cfg.action_points, {kPadValue, kPadValue, kPadValue})};
}

ScheduleDataset schedule_dataset_from_string(std::string_view name) {
  if (name == "covla") return ScheduleDataset::kCovla;
  if (name == "nuscenes") return ScheduleDataset::kNuscenes;
  throw Error(ErrorCode::kParameter, "unknown schedule dataset '" + std::string(name) + "'");
}

std::string_view to_string(ScheduleDataset dataset) {
  return dataset == ScheduleDataset::kCovla ? "covla" : "nuscenes";
}

std::vector<double> tl_schedule(ScheduleDataset dataset, std::uint32_t count) {
  if (count == 0) throw Error(ErrorCode::kParameter, "schedule needs L >= 1");
  std::vector<double> out;
  out.reserve(count);
  for (std::uint32_t l = 1; l <= count; ++l) {
    const double ld = static_cast<double>(l);
    out.push_back(dataset == ScheduleDataset::kCovla ? 0.45 + 0.5 * (ld - 1.0) : 0.5 * ld);
  }
  return out;
}

std::size_t InterleavedSequence::steps() const {
  const std::size_t step = std::size_t{tokens_per_frame} + action_points;
  return step == 0 ? 0 : elements.size() / step;
}

InterleavedSequence pack(std::span<const std::vector<Token>> frames,
                         std::span<const ActionInstruction> actions, const CodecConfig& cfg) {
  cfg.validate();
  if (frames.size() != actions.size()) {
    throw Error(ErrorCode::kValidation, std::to_string(frames.size()) + " frames but " +
                                            std::to_string(actions.size()) + " actions");
  }
  if (frames.empty()) throw Error(ErrorCode::kValidation, "nothing to pack");
  InterleavedSequence seq;
  seq.tokens_per_frame = cfg.tokens_per_frame;
  seq.action_points = cfg.action_points;
  const std::size_t total = frames.size() * cfg.step_length();
  seq.elements.reserve(total);
  seq.loss_mask.reserve(total);
  seq.temporal_ids.reserve(total);
  seq.spatial_ids.reserve(total);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    validate_frame(frames[t], cfg, t);
    validate_action(actions[t], cfg, t);
    append_step(seq, frames[t], actions[t], static_cast<std::uint32_t>(t));
  }
  return seq;
}

UnpackedChunk unpack(const InterleavedSequence& seq, const CodecConfig& cfg) {
  cfg.validate();
  const std::size_t step_len = cfg.step_length();
  if (seq.tokens_per_frame != cfg.tokens_per_frame || seq.action_points != cfg.action_points) {
    throw Error(ErrorCode::kStructure, "sequence layout does not match the codec config");
  }
  const std::size_t n = seq.elements.size();
  if (n == 0 || n % step_len != 0) {
    throw Error(ErrorCode::kStructure, "length " + std::to_string(n) +
                                           " is not a positive multiple of N+L = " +
                                           std::to_string(step_len));
  }
  if (seq.loss_mask.size() != n || seq.temporal_ids.size() != n || seq.spatial_ids.size() != n) {
    throw Error(ErrorCode::kStructure, "mask or position ids have the wrong length");
  }
  UnpackedChunk out;
  const std::size_t steps = n / step_len;
  out.frames.reserve(steps);
  out.actions.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    std::vector<Token> frame;
    frame.reserve(cfg.tokens_per_frame);
    ActionInstruction action;
    action.rows.reserve(cfg.action_points);
    for (std::size_t s = 0; s < step_len; ++s) {
      const std::size_t i = t * step_len + s;
      const bool image = s < cfg.tokens_per_frame;
      if (seq.temporal_ids[i] != t || seq.spatial_ids[i] != s ||
          seq.loss_mask[i] != (image ? 1 : 0)) {
        throw Error(ErrorCode::kStructure, "mask or position id mismatch at element " +
                                               std::to_string(i));
      }
      if (image) {
        const Token* tok = std::get_if<Token>(&seq.elements[i]);
        if (tok == nullptr) {
          throw Error(ErrorCode::kStructure, "expected image token at element " + std::to_string(i));
        }
        frame.push_back(*tok);
      } else {
        const ActionPoint* pt = std::get_if<ActionPoint>(&seq.elements[i]);
        if (pt == nullptr) {
          throw Error(ErrorCode::kStructure, "expected action point at element " + std::to_string(i));
        }
        action.rows.push_back(*pt);
      }
    }
    out.frames.push_back(std::move(frame));
    out.actions.push_back(std::move(action));
  }
  return out;
}

std::vector<std::uint8_t> loss_mask(const CodecConfig& cfg, std::size_t steps) {
  if (steps == 0) throw Error(ErrorCode::kParameter, "loss mask needs at least one step");
  std::vector<std::uint8_t> mask;
  mask.reserve(steps * cfg.step_length());
  for (std::size_t t = 0; t < steps; ++t) {
    mask.insert(mask.end(), cfg.tokens_per_frame, 1);
    mask.insert(mask.end(), cfg.action_points, 0);
  }
  return mask;
}

PositionIds position_indices(const CodecConfig& cfg, std::size_t steps) {
  if (steps == 0) throw Error(ErrorCode::kParameter, "position ids need at least one step");
  PositionIds ids;
  const std::uint32_t step_len = cfg.step_length();
  ids.temporal.reserve(steps * step_len);
  ids.spatial.reserve(steps * step_len);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::uint32_t s = 0; s < step_len; ++s) {
      ids.temporal.push_back(static_cast<std::uint32_t>(t));
      ids.spatial.push_back(s);
    }
  }
  return ids;
}

InterleavedSequence extend_for_inference(const InterleavedSequence& seq,
                                         std::span<const Token> new_tokens,
                                         const ActionInstruction& next_action,
                                         const CodecConfig& cfg) {
  // Structural check of the prefix; throws if it does not end on a full step.
  unpack(seq, cfg);
  const std::size_t step = seq.steps();
  validate_frame(new_tokens, cfg, step);
  validate_action(next_action, cfg, step);
  InterleavedSequence out = seq;
  append_step(out, new_tokens, next_action, static_cast<std::uint32_t>(step));
  return out;
}

}  // namespace actbench::codec
