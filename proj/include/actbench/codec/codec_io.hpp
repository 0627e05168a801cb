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
#include <iosfwd>
#include <string>

#include "actbench/codec/interleave.hpp"

namespace actbench::codec {

// Framed binary layout, all integers and doubles little-endian:
//
//   magic        8 bytes  "ACTSEQ\0\1"
//   version      u32      1
//   T N L        u32 x3   frames_per_chunk, tokens_per_frame, action_points
//   K            u64      vocab_size
//   H W D d      u32 x4   image_height, image_width, downscale, embed_dim
//   steps        u64
//   per step:    N x u32 tokens, then L x 3 x f64 (x, y, t_l)
//
// Mask and position ids are derived from the layout, not stored.

inline constexpr std::uint32_t kBinaryVersion = 1;

struct CodecFile {
  CodecConfig config;
  InterleavedSequence sequence;
};

void write_binary(std::ostream& out, const CodecFile& file);
/// Throws kStructure on a bad magic, version, truncated or oversized payload.
CodecFile read_binary(std::istream& in);

// JSONL debug form: a header line
//   {"kind":"header","version":1,"config":{...},"steps":S}
// followed by one line per step
//   {"kind":"step","t":i,"tokens":[...],"action":[[x,y,t_l],...]}
void write_jsonl(std::ostream& out, const CodecFile& file);
CodecFile read_jsonl(std::istream& in);

/// Audit summary: lengths, loss-mask popcount, pattern check and a per-step
/// position-id table; full_table adds one row per element.
std::string inspect(const CodecFile& file, bool full_table);

}  // namespace actbench::codec
