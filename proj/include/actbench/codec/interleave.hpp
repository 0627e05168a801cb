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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace actbench::codec {

using Token = std::uint32_t;

/// Shape of one conditioning chunk. tokens_per_frame must equal
/// (image_height / downscale) * (image_width / downscale).
struct CodecConfig {
  std::uint32_t frames_per_chunk = 25;
  std::uint32_t tokens_per_frame = 576;
  std::uint32_t action_points = 6;
  std::uint64_t vocab_size = 262144;
  std::uint32_t image_height = 288;
  std::uint32_t image_width = 512;
  std::uint32_t downscale = 16;
  std::uint32_t embed_dim = 2048;

  /// Config with a 1 x tokens_per_frame token grid and no downscaling.
  static CodecConfig flat(std::uint32_t frames, std::uint32_t tokens_per_frame,
                          std::uint32_t action_points, std::uint64_t vocab_size);

  std::uint32_t step_length() const { return tokens_per_frame + action_points; }

  /// Throws kParameter on an inconsistent grid or empty dimensions.
  void validate() const;

  bool operator==(const CodecConfig&) const = default;
};

/// (x, y, t_l): position in the ego frame of the current step, t_l seconds ahead.
using ActionPoint = std::array<double, 3>;

/// action_points rows ordered by ascending t_l. The padding instruction
/// (every element -1.0) is exempt from the ordering rule.
struct ActionInstruction {
  std::vector<ActionPoint> rows;

  bool is_padding() const;
  bool operator==(const ActionInstruction&) const = default;
};

/// Stand-in instruction for steps without trajectory data.
ActionInstruction padding_action(const CodecConfig& cfg);

enum class ScheduleDataset { kCovla, kNuscenes };

ScheduleDataset schedule_dataset_from_string(std::string_view name);
std::string_view to_string(ScheduleDataset dataset);

/// Look-ahead times in seconds for l = 1..L:
///   covla:    0.45 + 0.5 (l - 1)
///   nuscenes: 0.5 l
std::vector<double> tl_schedule(ScheduleDataset dataset, std::uint32_t count);

using Element = std::variant<Token, ActionPoint>;

/// Flat (c1, a1, ..., cT, aT) layout with per-element loss mask and
/// temporal/spatial position ids. Build through pack() or
/// extend_for_inference() so the invariants hold.
struct InterleavedSequence {
  std::uint32_t tokens_per_frame = 0;
  std::uint32_t action_points = 0;
  std::vector<Element> elements;
  std::vector<std::uint8_t> loss_mask;
  std::vector<std::uint32_t> temporal_ids;
  std::vector<std::uint32_t> spatial_ids;

  std::size_t size() const { return elements.size(); }
  std::size_t steps() const;

  bool operator==(const InterleavedSequence&) const = default;
};

struct UnpackedChunk {
  std::vector<std::vector<Token>> frames;  // raster-scan order
  std::vector<ActionInstruction> actions;

  bool operator==(const UnpackedChunk&) const = default;
};

/// Throws kValidation on count mismatches, wrong grid sizes, tokens >= K,
/// wrong action row counts, non-finite or unordered actions.
InterleavedSequence pack(std::span<const std::vector<Token>> frames,
                         std::span<const ActionInstruction> actions, const CodecConfig& cfg);

/// Inverse of pack. Throws kStructure when the length, element tags, mask or
/// position ids do not follow the pattern for `cfg`.
UnpackedChunk unpack(const InterleavedSequence& seq, const CodecConfig& cfg);

/// True on image-token positions, false on action positions.
std::vector<std::uint8_t> loss_mask(const CodecConfig& cfg, std::size_t steps);

struct PositionIds {
  std::vector<std::uint32_t> temporal;  // step index, 0-based
  std::vector<std::uint32_t> spatial;   // 0..N-1 tokens, N..N+L-1 actions
};

PositionIds position_indices(const CodecConfig& cfg, std::size_t steps);

/// Appends one predicted frame and the instruction for the next step.
InterleavedSequence extend_for_inference(const InterleavedSequence& seq,
                                         std::span<const Token> new_tokens,
                                         const ActionInstruction& next_action,
                                         const CodecConfig& cfg);

}  // namespace actbench::codec
