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


// actbench: benchmark construction, evaluation and codec utilities.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid input or arguments,
// 3 evaluation with zero coverage.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "actbench/bench/benchmark.hpp"
#include "actbench/bench/synthetic.hpp"
#include "actbench/bench/templates.hpp"
#include "actbench/codec/codec_io.hpp"
#include "actbench/error.hpp"
#include "actbench/harness/harness.hpp"
#include "actbench/labeler/labeler.hpp"
#include "actbench/traj_core/trajectory_io.hpp"
#include "actbench/version.hpp"

namespace {

using namespace actbench;

labeler::RuleConfig rules_from(const std::string& path) {
  return path.empty() ? labeler::RuleConfig{} : labeler::load_rule_config(path);
}

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  return out;
}

std::vector<bench::TrajectoryTemplate> load_templates(const std::string& templates_path,
                                                      const labeler::RuleConfig& rules,
                                                      const std::vector<double>& schedule) {
  const auto params = templates_path.empty() ? bench::default_template_params()
                                             : bench::load_template_params(templates_path);
  std::vector<bench::TrajectoryTemplate> out;
  out.reserve(params.size());
  for (const auto& p : params) out.push_back(bench::generate_template(p, rules, schedule));
  return out;
}

struct LabelArgs {
  std::string in;
  std::string rules;
};

void run_label(const LabelArgs& a) {
  const auto rules = rules_from(a.rules);
  const auto records = traj::read_trajectory_jsonl_file(a.in);
  for (const auto& r : records) {
    traj::Trajectory t = r.trajectory;
    if (t.frame().kind == traj::FrameKind::kGlobal) t = traj::to_local_frame(t, t.front());
    const auto label = labeler::label_trajectory(t, rules);
    const auto category = labeler::to_benchmark_category(label);
    const nlohmann::json row = {
        {"id", r.id},
        {"label", labeler::to_string(label)},
        {"category", category ? labeler::to_string(*category) : "none"}};
    std::cout << row.dump() << '\n';
  }
}

struct TemplatesArgs {
  std::string templates;
  std::string rules;
  std::string out;
  bool ini = false;
};

void run_templates(const TemplatesArgs& a) {
  const auto params = a.templates.empty() ? bench::default_template_params()
                                          : bench::load_template_params(a.templates);
  std::ostringstream text;
  if (a.ini) {
    text << bench::write_template_params(params);
  } else {
    const auto rules = rules_from(a.rules);
    std::vector<traj::TrajectoryRecord> records;
    for (const auto& p : params) {
      records.push_back({p.id, bench::generate_template(p, rules).instruction()});
    }
    traj::write_trajectory_jsonl(text, records);
  }
  if (a.out.empty()) {
    std::cout << text.str();
  } else {
    open_out(a.out) << text.str();
  }
}

struct BuildArgs {
  std::string scenes;
  std::string out;
  std::string templates;
  std::string rules;
  std::string exclude_file;
  std::string schedule = "covla";
  unsigned action_points = 6;
  std::size_t window = 44;
  std::size_t stride = 1;
  std::size_t context_len = 10;
  double speed_threshold = bench::kDefaultSpeedThresholdKmh;
};

void run_build(const BuildArgs& a) {
  const auto rules = rules_from(a.rules);
  const auto schedule =
      codec::tl_schedule(codec::schedule_dataset_from_string(a.schedule), a.action_points);
  const auto templates = load_templates(a.templates, rules, schedule);
  const auto scenes = traj::read_trajectory_jsonl_file(a.scenes);
  const auto contexts = bench::extract_contexts(scenes, {a.window, a.stride, a.context_len});
  std::set<std::string> exclusions;
  if (!a.exclude_file.empty()) {
    std::ifstream in(a.exclude_file);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + a.exclude_file);
    exclusions = bench::read_exclusions(in);
  }
  const auto result = bench::assemble_benchmark(contexts, templates, exclusions,
                                                {a.speed_threshold});
  std::filesystem::create_directories(a.out);
  auto manifest = open_out((std::filesystem::path(a.out) / "manifest.jsonl").string());
  bench::write_manifest(manifest, result.pairs);
  auto table = open_out((std::filesystem::path(a.out) / "templates.jsonl").string());
  bench::write_template_table(table, templates);
  const std::string counts = bench::counts_csv(result.counts);
  open_out((std::filesystem::path(a.out) / "counts.csv").string()) << counts;
  std::cout << counts;
}

struct SynthArgs {
  std::string out;
  bench::SyntheticSceneOptions opts;
};

void run_synth(const SynthArgs& a) {
  auto out = open_out(a.out);
  traj::write_trajectory_jsonl(out, bench::synthetic_scenes(a.opts));
}

struct OracleArgs {
  std::string manifest;
  std::string out;
  std::string rules;
  harness::OracleConfig cfg;
};

void run_oracle(const OracleArgs& a) {
  const auto rules = rules_from(a.rules);
  const auto pairs = bench::read_manifest_file(a.manifest);
  std::vector<harness::RolloutRecord> records;
  records.reserve(pairs.size());
  for (const auto& p : pairs) records.push_back(harness::oracle_rollout(p, a.cfg, rules));
  auto out = open_out(a.out);
  harness::write_rollouts(out, records);
}

struct EvalArgs {
  std::string manifest;
  std::string rollouts;
  std::string out;
  std::string rules;
  std::vector<std::string> formats{"json", "csv"};
  std::string conditioning = "unspecified";
  std::string created_at;
};

void run_eval(const EvalArgs& a) {
  harness::EvalOptions opts;
  opts.rules = rules_from(a.rules);
  opts.conditioning = a.conditioning;
  if (!a.created_at.empty()) opts.created_at = a.created_at;
  const auto pairs = bench::read_manifest_file(a.manifest);
  const auto ingest = harness::ingest_rollouts_file(a.rollouts);
  for (const auto& r : ingest.rejects) {
    std::cerr << fmt::format("rollouts line {}: {}\n", r.line, r.reason);
  }
  const auto bundle = harness::run_eval(pairs, ingest, opts);
  std::vector<harness::ReportFormat> formats;
  for (const auto& f : a.formats) {
    formats.push_back(f == "json" ? harness::ReportFormat::kJson : harness::ReportFormat::kCsv);
  }
  harness::emit_report(bundle, a.out, formats);
  const auto& cov = bundle.coverage;
  std::cout << fmt::format("evaluated {}/{} pairs, gaps {}, rejected {}, unresolved {}\n",
                           cov.evaluated, cov.manifest_pairs, cov.gaps.size(), cov.rejected.size(),
                           cov.unresolved.size());
  std::cout << fmt::format("IEC {:.4f}  ADE {:.4f}  FDE {:.4f}\n", bundle.iec,
                           bundle.categories.average_ade.value_or(0.0),
                           bundle.categories.average_fde.value_or(0.0));
}

bool has_binary_magic(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  char head[6] = {};
  in.read(head, sizeof head);
  return in.gcount() == 6 && std::string(head, 6) == "ACTSEQ";
}

codec::CodecFile read_codec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return has_binary_magic(path) ? codec::read_binary(in) : codec::read_jsonl(in);
}

struct CodecArgs {
  std::string in;
  std::string out;
  bool full = false;
};

int dispatch(CLI::App& app, const std::function<void()>& action) {
  try {
    action();
    return 0;
  } catch (const Error& e) {
    std::cerr << "actbench " << app.get_subcommands().front()->get_name() << ": "
              << to_string(e.code()) << ": " << e.what() << '\n';
    if (e.code() == ErrorCode::kCoverage) return 3;
    if (e.code() == ErrorCode::kIo) return 1;
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "actbench: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ACT-Bench benchmark construction and evaluation tools", "actbench"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::function<void()> action;

  LabelArgs label;
  auto* label_cmd = app.add_subcommand("label", "Label trajectories with the rule cascade");
  label_cmd->add_option("--in", label.in, "Trajectory JSONL")->required()->check(CLI::ExistingFile);
  label_cmd->add_option("--rules", label.rules, "Rule config INI")->check(CLI::ExistingFile);
  label_cmd->callback([&] { action = [&] { run_label(label); }; });

  TemplatesArgs templates;
  auto* tmpl_cmd = app.add_subcommand("templates", "Export the instruction template library");
  tmpl_cmd->add_option("--templates", templates.templates, "Template INI")
      ->check(CLI::ExistingFile);
  tmpl_cmd->add_option("--rules", templates.rules, "Rule config INI")->check(CLI::ExistingFile);
  tmpl_cmd->add_option("--out", templates.out, "Output file (default stdout)");
  tmpl_cmd->add_flag("--ini", templates.ini, "Write template parameters instead of paths");
  tmpl_cmd->callback([&] { action = [&] { run_templates(templates); }; });

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build-bench", "Pair scene contexts with templates");
  build_cmd->add_option("--scenes", build.scenes, "Global-frame scene JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  build_cmd->add_option("--out", build.out, "Output directory")->required();
  build_cmd->add_option("--templates", build.templates, "Template INI")->check(CLI::ExistingFile);
  build_cmd->add_option("--rules", build.rules, "Rule config INI")->check(CLI::ExistingFile);
  build_cmd->add_option("--exclude-file", build.exclude_file, "Ids to exclude")
      ->check(CLI::ExistingFile);
  build_cmd->add_option("--window", build.window, "Window length in frames")->capture_default_str();
  build_cmd->add_option("--stride", build.stride, "Window stride in frames")->capture_default_str();
  build_cmd->add_option("--context-len", build.context_len, "Context frames")->capture_default_str();
  build_cmd->add_option("--speed-threshold", build.speed_threshold, "km/h")->capture_default_str();
  build_cmd->add_option("--schedule", build.schedule, "Per-frame look-ahead schedule")
      ->check(CLI::IsMember({"covla", "nuscenes"}))
      ->capture_default_str();
  build_cmd->add_option("--action-points", build.action_points, "Points per instruction")
      ->capture_default_str();
  build_cmd->callback([&] { action = [&] { run_build(build); }; });

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth-scenes", "Write synthetic global-frame scenes");
  synth_cmd->add_option("--out", synth.out, "Scene JSONL")->required();
  synth_cmd->add_option("--count", synth.opts.count, "Scenes")->capture_default_str();
  synth_cmd->add_option("--frames", synth.opts.frames, "Frames per scene")->capture_default_str();
  synth_cmd->add_option("--seed", synth.opts.seed, "RNG seed")->capture_default_str();
  synth_cmd->callback([&] { action = [&] { run_synth(synth); }; });

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Write reference rollouts for a manifest");
  oracle_cmd->add_option("--manifest", oracle.manifest, "Manifest JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  oracle_cmd->add_option("--out", oracle.out, "Rollout JSONL")->required();
  oracle_cmd->add_option("--rules", oracle.rules, "Rule config INI")->check(CLI::ExistingFile);
  oracle_cmd->add_option("--sigma", oracle.cfg.noise_sigma, "Position noise, m")
      ->capture_default_str();
  oracle_cmd->add_option("--seed", oracle.cfg.seed, "RNG seed")->capture_default_str();
  oracle_cmd->add_option("--drop-rate", oracle.cfg.drop_rate, "Category swap probability")
      ->capture_default_str();
  oracle_cmd->add_option("--producer", oracle.cfg.producer, "Producer tag")->capture_default_str();
  oracle_cmd->callback([&] { action = [&] { run_oracle(oracle); }; });

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score rollouts against a manifest");
  eval_cmd->add_option("--manifest", eval.manifest, "Manifest JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--rollouts", eval.rollouts, "Rollout JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", eval.out, "Report directory")->required();
  eval_cmd->add_option("--rules", eval.rules, "Rule config INI")->check(CLI::ExistingFile);
  eval_cmd->add_option("--formats", eval.formats, "Report formats")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  eval_cmd->add_option("--conditioning", eval.conditioning, "Conditioning frequency tag")
      ->capture_default_str();
  eval_cmd->add_option("--created-at", eval.created_at, "Timestamp recorded in the report");
  eval_cmd->callback([&] { action = [&] { run_eval(eval); }; });

  CodecArgs codec_args;
  auto* codec_cmd = app.add_subcommand("codec", "Interleaved sequence files");
  codec_cmd->require_subcommand(1);
  auto* pack_cmd = codec_cmd->add_subcommand("pack", "JSONL steps to binary");
  auto* unpack_cmd = codec_cmd->add_subcommand("unpack", "Binary to JSONL steps");
  auto* inspect_cmd = codec_cmd->add_subcommand("inspect", "Audit a sequence file");
  for (auto* sub : {pack_cmd, unpack_cmd, inspect_cmd}) {
    sub->add_option("--in", codec_args.in, "Input file")->required()->check(CLI::ExistingFile);
  }
  pack_cmd->add_option("--out", codec_args.out, "Binary output")->required();
  unpack_cmd->add_option("--out", codec_args.out, "JSONL output")->required();
  inspect_cmd->add_flag("--full", codec_args.full, "Print one row per element");
  pack_cmd->callback([&] {
    action = [&] {
      std::ifstream in(codec_args.in);
      const auto file = codec::read_jsonl(in);
      auto out = open_out(codec_args.out, true);
      codec::write_binary(out, file);
    };
  });
  unpack_cmd->callback([&] {
    action = [&] {
      std::ifstream in(codec_args.in, std::ios::binary);
      const auto file = codec::read_binary(in);
      auto out = open_out(codec_args.out);
      codec::write_jsonl(out, file);
    };
  });
  inspect_cmd->callback([&] {
    action = [&] { std::cout << codec::inspect(read_codec(codec_args.in), codec_args.full); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return dispatch(app, action);
}
