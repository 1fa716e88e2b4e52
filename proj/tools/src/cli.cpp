/* Copyright 2026 The LLM Roofline Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "llm_roofline_tools/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "llm_roofline/analyzer.hpp"
#include "llm_roofline/errors.hpp"
#include "llm_roofline/format.hpp"
#include "llm_roofline/serialize.hpp"
#include "llm_roofline/sweep.hpp"
#include "llm_roofline_tools/service.hpp"

namespace llm_roofline::tools {
namespace {

namespace fs = std::filesystem;

struct DeploymentFlags {
  std::string model;
  std::string hardware;
  int64_t batch = 1;
  int64_t prompt_len = 0;
  int64_t gen_len = 0;
  int w_bits = 16;
  int a_bits = 16;
  int kv_bits = 16;
  bool flash_attn = false;
  std::string offload_link;
  double layer_fraction = 1.0;

  void Register(CLI::App& cmd) {
    cmd.add_option("--model", model, "Model preset name or config JSON path")
        ->required();
    cmd.add_option("--hardware", hardware,
                   "Hardware preset name or spec JSON path")
        ->required();
    cmd.add_option("--batch", batch, "Batch size")->capture_default_str();
    cmd.add_option("--prompt-len", prompt_len, "Prompt tokens")
        ->capture_default_str();
    cmd.add_option("--gen-len", gen_len, "Generated tokens")
        ->capture_default_str();
    cmd.add_option("--w-bits", w_bits, "Weight bit width")
        ->check(CLI::IsMember({1, 2, 4, 8, 16}))
        ->capture_default_str();
    cmd.add_option("--a-bits", a_bits, "Activation bit width")
        ->check(CLI::IsMember({4, 8, 16}))
        ->capture_default_str();
    cmd.add_option("--kv-bits", kv_bits, "KV cache bit width")
        ->check(CLI::IsMember({1, 2, 4, 8, 16}))
        ->capture_default_str();
    cmd.add_flag("--flash-attn", flash_attn, "Fuse qk/softmax/sv");
    cmd.add_option("--offload-weights", offload_link,
                   "Stream weights over the named hardware link");
    cmd.add_option("--layer-fraction", layer_fraction,
                   "Fraction of layers executed")
        ->capture_default_str();
  }

  DeploymentConfig ToConfig() const {
    DeploymentConfig cfg;
    cfg.shape = {batch, prompt_len, gen_len};
    cfg.quant = {w_bits, a_bits, kv_bits};
    cfg.fused_attention = flash_attn;
    if (!offload_link.empty()) {
      cfg.offload = OffloadConfig{OffloadConfig::What::kWeights, offload_link};
    }
    cfg.active_layer_fraction = layer_fraction;
    return cfg;
  }
};

nlohmann::json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded()) {
    throw RooflineError(ErrorCode::kInvalidArgument, path.string(),
                        path.string() + " is not valid JSON");
  }
  return doc;
}

ModelConfig ResolveModel(const std::string& value) {
  if (fs::is_regular_file(value)) {
    return LoadModelConfig(ReadJsonFile(value), fs::path(value).stem().string());
  }
  return PresetRegistry::Default().Model(value);
}

HardwareSpec ResolveHardware(const std::string& value) {
  if (fs::is_regular_file(value)) {
    return LoadHardwareSpec(ReadJsonFile(value),
                            fs::path(value).stem().string());
  }
  return PresetRegistry::Default().Hardware(value);
}

std::string PerOpCsv(const NetworkReport& report) {
  std::string out =
      "stage,context_len,op_name,ops,total_bytes,arithmetic_intensity,"
      "attainable,bound,time_s,instances\n";
  char buffer[512];
  for (const LayerReport& row : report.per_op) {
    std::snprintf(buffer, sizeof(buffer),
                  "%s,%lld,%s,%.17g,%.17g,%.17g,%.17g,%s,%.17g,%lld\n",
                  std::string(StageName(row.stage)).c_str(),
                  static_cast<long long>(row.stage.context_len),
                  std::string(row.name()).c_str(), row.ops, row.total_bytes,
                  row.arithmetic_intensity, row.attainable,
                  std::string(BoundName(row.bound)).c_str(), row.time,
                  static_cast<long long>(row.instances));
    out += buffer;
  }
  return out;
}

int ExitCodeFor(const RooflineError& e) {
  return e.code() == ErrorCode::kUnknownPreset ? kExitUnknownPreset
                                               : kExitBadFlags;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Roofline analysis of transformer inference", "llm-roofline"};
  app.require_subcommand(1);

  DeploymentFlags analyze_flags;
  std::string analyze_format = "table";
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Per-op roofline report and network summary");
  analyze_flags.Register(*analyze);
  analyze->add_option("--format", analyze_format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();

  DeploymentFlags sweep_flags;
  std::string axis_name;
  std::string values_text;
  std::vector<std::string> variant_texts;
  std::string metric_name = "total";
  std::string sweep_format = "csv";
  CLI::App* sweep =
      app.add_subcommand("sweep", "Series over one axis, one per variant");
  sweep_flags.Register(*sweep);
  sweep->add_option("--axis", axis_name, "batch|prompt-len|context-len|bandwidth")
      ->required();
  sweep->add_option("--values", values_text, "Comma-separated axis values")
      ->required();
  sweep->add_option("--variant", variant_texts,
                    "name:w=4,a=16,kv=4,fa=1,offload=pcie,lf=0.5 (repeatable)");
  sweep->add_option("--metric", metric_name, "total|prefill|decode")
      ->capture_default_str();
  sweep->add_option("--format", sweep_format, "csv|jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  CLI::App* serve = app.add_subcommand("serve", "HTTP JSON service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--static-dir", static_dir, "Viewer bundle to serve at /");

  CLI::App* presets = app.add_subcommand("presets", "List bundled presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, out, err);
    return kExitBadFlags;
  }

  try {
    if (*analyze) {
      const ModelConfig model = ResolveModel(analyze_flags.model);
      const HardwareSpec hw = ResolveHardware(analyze_flags.hardware);
      const NetworkReport report =
          AnalyzeNetwork(model, hw, analyze_flags.ToConfig());
      if (analyze_format == "json") {
        out << CanonicalDump(ToJson(report));
      } else if (analyze_format == "csv") {
        out << PerOpCsv(report);
      } else {
        out << RenderTable(report);
      }
      return kExitOk;
    }

    if (*sweep) {
      SweepRequest req;
      req.model = ResolveModel(sweep_flags.model);
      req.hardware = ResolveHardware(sweep_flags.hardware);
      req.base = sweep_flags.ToConfig();
      auto axis = ParseSweepAxis(axis_name);
      if (!axis) {
        err << "unknown --axis '" << axis_name << "'\n";
        return kExitBadFlags;
      }
      req.axis = *axis;
      auto metric = ParseLatencyMetric(metric_name);
      if (!metric) {
        err << "unknown --metric '" << metric_name << "'\n";
        return kExitBadFlags;
      }
      req.metric = *metric;
      std::stringstream values(values_text);
      for (std::string token; std::getline(values, token, ',');) {
        try {
          size_t used = 0;
          req.values.push_back(std::stod(token, &used));
          if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::logic_error&) {
          err << "malformed --values token '" << token << "'\n";
          return kExitBadFlags;
        }
      }
      for (const std::string& text : variant_texts) {
        req.variants.push_back(ParseVariant(text));
      }
      out << ExportSeries(RunSweep(req), sweep_format == "jsonl"
                                             ? SeriesFormat::kJsonl
                                             : SeriesFormat::kCsv);
      return kExitOk;
    }

    if (*serve) {
      std::optional<fs::path> mount;
      if (!static_dir.empty()) mount = fs::path(static_dir);
      err << "listening on http://" << host << ":" << port << "\n";
      if (!Serve(host, port, mount, PresetRegistry::Default())) {
        err << "cannot bind " << host << ":" << port << "\n";
        return kExitFailure;
      }
      return kExitOk;
    }

    if (*presets) {
      const PresetRegistry& registry = PresetRegistry::Default();
      out << "models:\n";
      for (const auto& name : registry.ModelNames()) out << "  " << name << "\n";
      out << "hardware:\n";
      for (const auto& name : registry.HardwareNames()) {
        out << "  " << name << "\n";
      }
      return kExitOk;
    }
  } catch (const RooflineError& e) {
    err << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitFailure;
}

}  // namespace llm_roofline::tools
