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

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "llm_roofline/sweep.hpp"
#include "llm_roofline_tools/cli.hpp"

namespace llm_roofline::tools {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "llm-roofline");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kLlama7bA6000 = {
    "--model", "llama-2-7b", "--hardware", "nvidia-a6000", "--batch", "1",
    "--prompt-len", "2048"};

std::vector<std::string> With(std::vector<std::string> head,
                              const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

TEST(Cli, AnalyzeTablePrefill) {
  const Result r = Invoke(With({"analyze"}, With(kLlama7bA6000, {"--gen-len", "0",
                                                         "--format", "table"})));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("q_proj"), std::string::npos);
  EXPECT_NE(r.out.find("69G"), std::string::npos);
  EXPECT_NE(r.out.find("Prefill"), std::string::npos);
  EXPECT_EQ(r.out.find("Decode (context"), std::string::npos);
}

TEST(Cli, UnknownPresetExitsThreeWithCandidates) {
  const Result r = Invoke({"analyze", "--model", "nope", "--hardware",
                        "nvidia-a6000", "--prompt-len", "8"});
  EXPECT_EQ(r.code, kExitUnknownPreset);
  EXPECT_NE(r.err.find("llama-2-7b"), std::string::npos);
  const Result hw = Invoke({"analyze", "--model", "llama-2-7b", "--hardware",
                         "tpu", "--prompt-len", "8"});
  EXPECT_EQ(hw.code, kExitUnknownPreset);
  EXPECT_NE(hw.err.find("nvidia-a6000"), std::string::npos);
}

TEST(Cli, BadFlagsExitTwo) {
  EXPECT_EQ(Invoke({"analyze", "--model"}).code, kExitBadFlags);
  EXPECT_EQ(Invoke(With({"analyze"}, With(kLlama7bA6000, {"--format", "xml"}))).code,
            kExitBadFlags);
  EXPECT_EQ(Invoke(With({"analyze"}, With(kLlama7bA6000, {"--batch", "0"}))).code,
            kExitBadFlags);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitBadFlags);
  EXPECT_EQ(Invoke({}).code, kExitBadFlags);
}

TEST(Cli, FourBitWeightsAreQuarterOfFp16) {
  const auto base = With({"analyze"}, With(kLlama7bA6000, {"--gen-len", "4",
                                                      "--format", "json"}));
  const Result fp16 = Invoke(base);
  const Result w4 = Invoke(With(base, {"--w-bits", "4", "--kv-bits", "4"}));
  ASSERT_EQ(fp16.code, kExitOk) << fp16.err;
  ASSERT_EQ(w4.code, kExitOk) << w4.err;
  const auto a = nlohmann::json::parse(fp16.out);
  const auto b = nlohmann::json::parse(w4.out);
  EXPECT_EQ(b["memory"]["weights"].get<double>() * 4,
            a["memory"]["weights"].get<double>());
  EXPECT_EQ(b["memory"]["kv_cache"].get<double>() * 4,
            a["memory"]["kv_cache"].get<double>());
}

TEST(Cli, CsvFormatHasOneRowPerOp) {
  const Result r = Invoke(With({"analyze"}, With(kLlama7bA6000, {"--gen-len", "1",
                                                         "--format", "csv"})));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = std::count(r.out.begin(), r.out.end(), '\n');
  EXPECT_EQ(lines, 1 + 2 * 14);
}

TEST(Cli, SweepEmitsCsv) {
  const Result r = Invoke({"sweep", "--model", "llama-2-13b", "--hardware",
                        "nvidia-a6000", "--prompt-len", "1024", "--gen-len",
                        "1", "--axis", "batch", "--values", "1,2,4",
                        "--variant", "FP16", "--variant", "W4KV4:w=4,kv=4",
                        "--metric", "decode"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto series = ParseSeriesCsv(r.out);
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[1].name, "W4KV4");
  EXPECT_EQ(series[1].points.size(), 3u);
  EXPECT_EQ(r.out.substr(0, kSeriesCsvHeader.size()), kSeriesCsvHeader);
}

TEST(Cli, SweepSinglePointMatchesAnalyzeJson) {
  const Result sweep = Invoke({"sweep", "--model", "llama-2-7b", "--hardware",
                            "nvidia-a6000", "--prompt-len", "128",
                            "--gen-len", "8", "--axis", "batch", "--values",
                            "2", "--format", "jsonl"});
  const Result analyze = Invoke({"analyze", "--model", "llama-2-7b",
                              "--hardware", "nvidia-a6000", "--prompt-len",
                              "128", "--gen-len", "8", "--batch", "2",
                              "--format", "json"});
  ASSERT_EQ(sweep.code, kExitOk) << sweep.err;
  ASSERT_EQ(analyze.code, kExitOk) << analyze.err;
  // The analyze JSON is rounded to six significant digits.
  const auto point = nlohmann::json::parse(sweep.out);
  const auto report = nlohmann::json::parse(analyze.out);
  EXPECT_NEAR(point["latency_s"].get<double>(),
              report["total_latency_s"].get<double>(),
              5e-6 * report["total_latency_s"].get<double>());
  EXPECT_NEAR(point["throughput_tps"].get<double>(),
              report["throughput_tps"].get<double>(),
              5e-6 * report["throughput_tps"].get<double>());
  EXPECT_EQ(point["memory_bytes"].get<double>(),
            report["memory"]["total"].get<double>());
}

TEST(Cli, SweepRejectsEmptyValuesAndBadVariants) {
  const std::vector<std::string> base = {
      "sweep", "--model", "llama-2-7b", "--hardware", "nvidia-a6000",
      "--prompt-len", "8", "--axis", "batch"};
  EXPECT_EQ(Invoke(With(base, {"--values", ""})).code, kExitBadFlags);
  EXPECT_EQ(Invoke(base).code, kExitBadFlags);
  const Result bad = Invoke(With(base, {"--values", "1,2", "--variant",
                                     "W4:w=4,bits=2"}));
  EXPECT_EQ(bad.code, kExitBadFlags);
  EXPECT_NE(bad.err.find("bits=2"), std::string::npos);
  EXPECT_EQ(Invoke(With(base, {"--values", "1,x"})).code, kExitBadFlags);
  EXPECT_EQ(Invoke(With(base, {"--values", "4,2"})).code, kExitBadFlags);
}

TEST(Cli, PresetsListsBundledNames) {
  const Result r = Invoke({"presets"});
  ASSERT_EQ(r.code, kExitOk);
  for (const char* name : {"llama-2-7b", "llama-2-13b", "nvidia-a6000"}) {
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
  }
}

}  // namespace
}  // namespace llm_roofline::tools
