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

#include "actbench/codec/codec_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "actbench/error.hpp"

namespace actbench::codec {
namespace {

using nlohmann::json;

constexpr std::array<char, 8> kMagic = {'A', 'C', 'T', 'S', 'E', 'Q', '\0', '\1'};

template <typename U>
void put_le(std::ostream& out, U v) {
  std::array<char, sizeof(U)> buf{};
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  }
  out.write(buf.data(), buf.size());
}

template <typename U>
U get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(U)> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
    throw Error(ErrorCode::kStructure, std::string("truncated input while reading ") + what);
  }
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(buf[i]) << (8 * i);
  return v;
}

json config_to_json(const CodecConfig& c) {
  return {{"frames_per_chunk", c.frames_per_chunk}, {"tokens_per_frame", c.tokens_per_frame},
          {"action_points", c.action_points},       {"vocab_size", c.vocab_size},
          {"image_height", c.image_height},         {"image_width", c.image_width},
          {"downscale", c.downscale},               {"embed_dim", c.embed_dim}};
}

CodecConfig config_from_json(const json& j) {
  CodecConfig c;
  try {
    c.frames_per_chunk = j.at("frames_per_chunk").get<std::uint32_t>();
    c.tokens_per_frame = j.at("tokens_per_frame").get<std::uint32_t>();
    c.action_points = j.at("action_points").get<std::uint32_t>();
    c.vocab_size = j.at("vocab_size").get<std::uint64_t>();
    c.image_height = j.at("image_height").get<std::uint32_t>();
    c.image_width = j.at("image_width").get<std::uint32_t>();
    c.downscale = j.at("downscale").get<std::uint32_t>();
    c.embed_dim = j.at("embed_dim").get<std::uint32_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("codec config: ") + e.what());
  }
  return c;
}

CodecFile repack(const CodecConfig& cfg, const UnpackedChunk& chunk) {
  return {cfg, pack(chunk.frames, chunk.actions, cfg)};
}

}  // namespace

void write_binary(std::ostream& out, const CodecFile& file) {
  const CodecConfig& c = file.config;
  const UnpackedChunk chunk = unpack(file.sequence, c);
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kBinaryVersion);
  put_le<std::uint32_t>(out, c.frames_per_chunk);
  put_le<std::uint32_t>(out, c.tokens_per_frame);
  put_le<std::uint32_t>(out, c.action_points);
  put_le<std::uint64_t>(out, c.vocab_size);
  put_le<std::uint32_t>(out, c.image_height);
  put_le<std::uint32_t>(out, c.image_width);
  put_le<std::uint32_t>(out, c.downscale);
  put_le<std::uint32_t>(out, c.embed_dim);
  put_le<std::uint64_t>(out, chunk.frames.size());
  for (std::size_t t = 0; t < chunk.frames.size(); ++t) {
    for (Token tok : chunk.frames[t]) put_le<std::uint32_t>(out, tok);
    for (const auto& row : chunk.actions[t].rows) {
      for (double v : row) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing binary sequence");
}

CodecFile read_binary(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kMagic) {
    throw Error(ErrorCode::kStructure, "not an interleaved sequence file (bad magic)");
  }
  const auto version = get_le<std::uint32_t>(in, "version");
  if (version != kBinaryVersion) {
    throw Error(ErrorCode::kStructure, "unsupported version " + std::to_string(version));
  }
  CodecConfig c;
  c.frames_per_chunk = get_le<std::uint32_t>(in, "header");
  c.tokens_per_frame = get_le<std::uint32_t>(in, "header");
  c.action_points = get_le<std::uint32_t>(in, "header");
  c.vocab_size = get_le<std::uint64_t>(in, "header");
  c.image_height = get_le<std::uint32_t>(in, "header");
  c.image_width = get_le<std::uint32_t>(in, "header");
  c.downscale = get_le<std::uint32_t>(in, "header");
  c.embed_dim = get_le<std::uint32_t>(in, "header");
  c.validate();
  const auto steps = get_le<std::uint64_t>(in, "step count");
  if (steps == 0) throw Error(ErrorCode::kStructure, "sequence has no steps");

  UnpackedChunk chunk;
  for (std::uint64_t t = 0; t < steps; ++t) {
    std::vector<Token> frame(c.tokens_per_frame);
    for (auto& tok : frame) tok = get_le<std::uint32_t>(in, "tokens");
    ActionInstruction action;
    action.rows.resize(c.action_points);
    for (auto& row : action.rows) {
      for (double& v : row) v = std::bit_cast<double>(get_le<std::uint64_t>(in, "actions"));
    }
    chunk.frames.push_back(std::move(frame));
    chunk.actions.push_back(std::move(action));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorCode::kStructure, "trailing bytes after the last step");
  }
  return repack(c, chunk);
}

void write_jsonl(std::ostream& out, const CodecFile& file) {
  const UnpackedChunk chunk = unpack(file.sequence, file.config);
  out << json{{"kind", "header"},
              {"version", kBinaryVersion},
              {"config", config_to_json(file.config)},
              {"steps", chunk.frames.size()}}
             .dump()
      << '\n';
  for (std::size_t t = 0; t < chunk.frames.size(); ++t) {
    json action = json::array();
    for (const auto& row : chunk.actions[t].rows) action.push_back({row[0], row[1], row[2]});
    out << json{{"kind", "step"}, {"t", t}, {"tokens", chunk.frames[t]}, {"action", action}}.dump()
        << '\n';
  }
}

CodecFile read_jsonl(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<CodecConfig> cfg;
  std::uint64_t declared_steps = 0;
  UnpackedChunk chunk;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      const json j = json::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "header") {
        if (cfg) throw Error(ErrorCode::kStructure, where + "duplicate header");
        cfg = config_from_json(j.at("config"));
        declared_steps = j.at("steps").get<std::uint64_t>();
      } else if (kind == "step") {
        if (!cfg) throw Error(ErrorCode::kStructure, where + "step before header");
        if (j.at("t").get<std::uint64_t>() != chunk.frames.size()) {
          throw Error(ErrorCode::kStructure, where + "steps out of order");
        }
        chunk.frames.push_back(j.at("tokens").get<std::vector<Token>>());
        ActionInstruction action;
        for (const auto& row : j.at("action")) {
          action.rows.push_back(row.get<ActionPoint>());
        }
        chunk.actions.push_back(std::move(action));
      } else {
        throw Error(ErrorCode::kSchema, where + "unknown record kind '" + kind + "'");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchema, where + e.what());
    }
  }
  if (!cfg) throw Error(ErrorCode::kStructure, "missing header line");
  if (declared_steps != chunk.frames.size()) {
    throw Error(ErrorCode::kStructure, "header declares " + std::to_string(declared_steps) +
                                           " steps, found " + std::to_string(chunk.frames.size()));
  }
  return repack(*cfg, chunk);
}

std::string inspect(const CodecFile& file, bool full_table) {
  const CodecConfig& c = file.config;
  const InterleavedSequence& seq = file.sequence;
  const UnpackedChunk chunk = unpack(seq, c);
  const std::size_t steps = chunk.frames.size();
  std::size_t popcount = 0;
  for (auto m : seq.loss_mask) popcount += m;
  std::size_t padding = 0;
  for (const auto& a : chunk.actions) padding += (a.is_padding() && !a.rows.empty()) ? 1 : 0;

  std::ostringstream out;
  out << fmt::format("config: T={} N={} L={} K={} H={} W={} D={} d={}\n", c.frames_per_chunk,
                     c.tokens_per_frame, c.action_points, c.vocab_size, c.image_height,
                     c.image_width, c.downscale, c.embed_dim);
  out << fmt::format("steps: {}\n", steps);
  out << fmt::format("length: {} (N+L)*steps={}\n", seq.size(), steps * c.step_length());
  out << fmt::format("loss_mask_popcount: {} N*steps={}\n", popcount,
                     steps * c.tokens_per_frame);
  out << fmt::format("padding_steps: {}\n", padding);
  out << "pattern: ok\n";
  out << "step temporal_id token_spatial_ids action_spatial_ids\n";
  for (std::size_t t = 0; t < steps; ++t) {
    const std::size_t base = t * c.step_length();
    const std::string actions =
        c.action_points == 0
            ? std::string("-")
            : fmt::format("{}..{}", seq.spatial_ids[base + c.tokens_per_frame],
                          seq.spatial_ids[base + c.step_length() - 1]);
    out << fmt::format("{} {} {}..{} {}\n", t, seq.temporal_ids[base], seq.spatial_ids[base],
                       seq.spatial_ids[base + c.tokens_per_frame - 1], actions);
  }
  if (full_table) {
    out << "index kind mask temporal_id spatial_id\n";
    for (std::size_t i = 0; i < seq.size(); ++i) {
      out << fmt::format("{} {} {} {} {}\n", i,
                         std::holds_alternative<Token>(seq.elements[i]) ? "token" : "action",
                         seq.loss_mask[i], seq.temporal_ids[i], seq.spatial_ids[i]);
    }
  }
  return out.str();
}

}  // namespace actbench::codec
