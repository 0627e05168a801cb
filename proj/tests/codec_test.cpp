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


#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "actbench/codec/codec_io.hpp"
#include "actbench/codec/interleave.hpp"
#include "support/oracles.hpp"

namespace actbench::codec {
namespace {

struct Chunk {
  std::vector<std::vector<Token>> frames;
  std::vector<ActionInstruction> actions;
};

Chunk random_chunk(std::mt19937_64& rng, const CodecConfig& cfg, std::size_t steps) {
  std::uniform_int_distribution<Token> tok(0, static_cast<Token>(cfg.vocab_size - 1));
  std::uniform_real_distribution<double> xy(-30.0, 30.0);
  std::bernoulli_distribution pad(0.2);
  Chunk c;
  const auto sched = tl_schedule(ScheduleDataset::kCovla, std::max(cfg.action_points, 1u));
  for (std::size_t t = 0; t < steps; ++t) {
    std::vector<Token> f(cfg.tokens_per_frame);
    for (auto& v : f) v = tok(rng);
    c.frames.push_back(std::move(f));
    if (pad(rng)) {
      c.actions.push_back(padding_action(cfg));
    } else {
      ActionInstruction a;
      for (std::uint32_t l = 0; l < cfg.action_points; ++l) a.rows.push_back({xy(rng), xy(rng), sched[l]});
      c.actions.push_back(std::move(a));
    }
  }
  return c;
}

CodecConfig toy() { return CodecConfig::flat(2, 3, 2, 10); }

TEST(Pack, DefaultLengthAndMask) {
  const CodecConfig cfg;
  std::mt19937_64 rng(1);
  const Chunk c = random_chunk(rng, cfg, cfg.frames_per_chunk);
  const auto seq = pack(c.frames, c.actions, cfg);
  EXPECT_EQ(seq.size(), 14550u);
  std::size_t popcount = 0;
  for (auto m : seq.loss_mask) popcount += m;
  EXPECT_EQ(popcount, 14400u);
  EXPECT_EQ(loss_mask(cfg, 25), seq.loss_mask);
}

TEST(Pack, ToyExpansion) {
  const CodecConfig cfg = toy();
  const std::vector<std::vector<Token>> frames = {{1, 2, 3}, {4, 5, 6}};
  const std::vector<ActionInstruction> actions = {
      {{{0.1, 1.0, 0.45}, {0.2, 2.0, 0.95}}}, padding_action(cfg)};
  const auto seq = pack(frames, actions, cfg);
  EXPECT_EQ(seq.size(), 10u);
  EXPECT_EQ(seq.loss_mask, (std::vector<std::uint8_t>{1, 1, 1, 0, 0, 1, 1, 1, 0, 0}));
  EXPECT_EQ(seq.temporal_ids, (std::vector<std::uint32_t>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1}));
  EXPECT_EQ(seq.spatial_ids, (std::vector<std::uint32_t>{0, 1, 2, 3, 4, 0, 1, 2, 3, 4}));
  EXPECT_EQ(std::get<Token>(seq.elements[5]), 4u);
  EXPECT_EQ(std::get<ActionPoint>(seq.elements[4]), (ActionPoint{0.2, 2.0, 0.95}));
  const auto ids = position_indices(cfg, 2);
  EXPECT_EQ(ids.temporal, seq.temporal_ids);
  EXPECT_EQ(ids.spatial, seq.spatial_ids);
  const auto back = unpack(seq, cfg);
  EXPECT_EQ(back.frames, frames);
  EXPECT_EQ(back.actions, actions);
  std::size_t popcount = 0;
  for (auto m : loss_mask(cfg, 2)) popcount += m;
  EXPECT_EQ(popcount, 6u);
}

TEST(Pack, NoActionPoints) {
  const CodecConfig cfg = CodecConfig::flat(1, 4, 0, 10);
  const std::vector<std::vector<Token>> frames = {{1, 2, 3, 4}};
  const std::vector<ActionInstruction> actions = {{}};
  const auto seq = pack(frames, actions, cfg);
  EXPECT_EQ(seq.size(), 4u);
  EXPECT_EQ(seq.loss_mask, (std::vector<std::uint8_t>{1, 1, 1, 1}));
  EXPECT_EQ(loss_mask(cfg, 3), std::vector<std::uint8_t>(12, 1));
}

TEST(Pack, ValidationErrors) {
  const CodecConfig cfg = toy();
  const std::vector<ActionInstruction> one = {padding_action(cfg)};
  const std::vector<std::vector<Token>> short_frame = {{1, 2}};
  EXPECT_ERROR_CODE(pack(short_frame, one, cfg), ErrorCode::kValidation);
  const std::vector<std::vector<Token>> big_token = {{1, 2, 10}};
  EXPECT_ERROR_CODE(pack(big_token, one, cfg), ErrorCode::kValidation);
  const std::vector<std::vector<Token>> two = {{1, 2, 3}, {1, 2, 3}};
  EXPECT_ERROR_CODE(pack(two, one, cfg), ErrorCode::kValidation);
}

TEST(Unpack, StructureErrors) {
  const CodecConfig cfg = toy();
  const std::vector<std::vector<Token>> frames = {{1, 2, 3}};
  const std::vector<ActionInstruction> actions = {padding_action(cfg)};
  const auto seq = pack(frames, actions, cfg);

  auto truncated = seq;
  truncated.elements.pop_back();
  truncated.loss_mask.pop_back();
  truncated.temporal_ids.pop_back();
  truncated.spatial_ids.pop_back();
  EXPECT_ERROR_CODE(unpack(truncated, cfg), ErrorCode::kStructure);

  auto swapped = seq;
  std::swap(swapped.elements[0], swapped.elements[3]);
  EXPECT_ERROR_CODE(unpack(swapped, cfg), ErrorCode::kStructure);

  auto bad_mask = seq;
  bad_mask.loss_mask[3] = 1;
  EXPECT_ERROR_CODE(unpack(bad_mask, cfg), ErrorCode::kStructure);
}

TEST(Padding, AllMinusOne) {
  for (std::uint32_t l : {6u, 1u}) {
    CodecConfig cfg;
    cfg.action_points = l;
    const auto a = padding_action(cfg);
    ASSERT_EQ(a.rows.size(), l);
    for (const auto& row : a.rows) EXPECT_EQ(row, (ActionPoint{-1.0, -1.0, -1.0}));
    EXPECT_TRUE(a.is_padding());
  }
}

TEST(Schedule, Values) {
  EXPECT_EQ(tl_schedule(ScheduleDataset::kCovla, 6),
            (std::vector<double>{0.45, 0.95, 1.45, 1.95, 2.45, 2.95}));
  EXPECT_EQ(tl_schedule(ScheduleDataset::kNuscenes, 6),
            (std::vector<double>{0.5, 1.0, 1.5, 2.0, 2.5, 3.0}));
  EXPECT_EQ(tl_schedule(ScheduleDataset::kCovla, 1), (std::vector<double>{0.45}));
  EXPECT_ERROR_CODE(schedule_dataset_from_string("kitti"), ErrorCode::kParameter);
}

TEST(Config, Validation) {
  EXPECT_NO_THROW(CodecConfig{}.validate());
  CodecConfig bad;
  bad.tokens_per_frame = 575;
  EXPECT_ERROR_CODE(bad.validate(), ErrorCode::kParameter);
}

TEST(Extend, AddsOneStep) {
  const CodecConfig cfg = CodecConfig::flat(4, 5, 3, 100);
  std::mt19937_64 rng(4);
  const Chunk c = random_chunk(rng, cfg, 3);
  const auto seq = pack(c.frames, c.actions, cfg);
  const Chunk next = random_chunk(rng, cfg, 1);
  const auto ext = extend_for_inference(seq, next.frames[0], next.actions[0], cfg);
  EXPECT_EQ(ext.size(), 8u * 4u);
  auto frames = c.frames;
  auto actions = c.actions;
  frames.push_back(next.frames[0]);
  actions.push_back(next.actions[0]);
  EXPECT_EQ(ext, pack(frames, actions, cfg));
  const std::vector<Token> wrong = {1, 2};
  EXPECT_ERROR_CODE(extend_for_inference(seq, wrong, next.actions[0], cfg), ErrorCode::kValidation);
}

TEST(RoundTrip, RandomChunksThroughMemoryBinaryAndJsonl) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint32_t> dim(1, 6);
  std::uniform_int_distribution<std::uint32_t> l(0, 6);
  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t h = dim(rng);
    const std::uint32_t w = dim(rng);
    CodecConfig cfg = CodecConfig::flat(dim(rng), h * w, l(rng), 1u + rng() % 70000);
    cfg.image_height = h;
    cfg.image_width = w;
    const Chunk c = random_chunk(rng, cfg, cfg.frames_per_chunk);
    const auto seq = pack(c.frames, c.actions, cfg);
    const auto back = unpack(seq, cfg);
    ASSERT_EQ(back.frames, c.frames);
    ASSERT_EQ(back.actions, c.actions);

    std::stringstream bin;
    write_binary(bin, {cfg, seq});
    const CodecFile fb = read_binary(bin);
    ASSERT_EQ(fb.config, cfg);
    ASSERT_EQ(fb.sequence, seq);

    if (i % 10 == 0) {
      std::stringstream text;
      write_jsonl(text, {cfg, seq});
      const CodecFile fj = read_jsonl(text);
      ASSERT_EQ(fj.config, cfg);
      ASSERT_EQ(fj.sequence, seq);
    }
  }
}

TEST(BinaryFormat, RejectsCorruptFiles) {
  const CodecConfig cfg = toy();
  const std::vector<std::vector<Token>> frames = {{1, 2, 3}, {4, 5, 6}};
  const std::vector<ActionInstruction> actions = {padding_action(cfg), padding_action(cfg)};
  std::stringstream bin;
  write_binary(bin, {cfg, pack(frames, actions, cfg)});
  const std::string bytes = bin.str();

  std::istringstream magic("XXXXXXXX" + bytes.substr(8));
  EXPECT_ERROR_CODE(read_binary(magic), ErrorCode::kStructure);
  std::istringstream cut(bytes.substr(0, bytes.size() - 3));
  EXPECT_ERROR_CODE(read_binary(cut), ErrorCode::kStructure);
  std::istringstream extra(bytes + "x");
  EXPECT_ERROR_CODE(read_binary(extra), ErrorCode::kStructure);
  std::string version = bytes;
  version[8] = 2;
  std::istringstream ver(version);
  EXPECT_ERROR_CODE(read_binary(ver), ErrorCode::kStructure);
}

TEST(Inspect, ReportsCounts) {
  const CodecConfig cfg = toy();
  const std::vector<std::vector<Token>> frames = {{1, 2, 3}, {4, 5, 6}};
  const std::vector<ActionInstruction> actions = {{{{0, 1, 0.45}, {0, 2, 0.95}}},
                                                  padding_action(cfg)};
  const std::string out = inspect({cfg, pack(frames, actions, cfg)}, true);
  EXPECT_NE(out.find("length: 10"), std::string::npos) << out;
  EXPECT_NE(out.find("loss_mask_popcount: 6"), std::string::npos) << out;
  EXPECT_NE(out.find("padding_steps: 1"), std::string::npos) << out;
  EXPECT_NE(out.find("9 action 0 1 4"), std::string::npos) << out;
}

}  // namespace
}  // namespace actbench::codec
