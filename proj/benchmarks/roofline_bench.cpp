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

#include <benchmark/benchmark.h>

#include "llm_roofline/analyzer.hpp"
#include "llm_roofline/presets.hpp"
#include "llm_roofline/sweep.hpp"

namespace llm_roofline {
namespace {

void BM_BuildOpGraph(benchmark::State& state) {
  const ModelConfig model = PresetModel("llama-2-7b");
  const InferenceShape shape{1, 2048, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        BuildOpGraph(model, shape, Stage::Prefill(), QuantSpec{}, false));
  }
}
BENCHMARK(BM_BuildOpGraph);

void BM_AnalyzeNetwork(benchmark::State& state) {
  const ModelConfig model = PresetModel("llama-2-7b");
  const HardwareSpec hw = PresetHardware("nvidia-a6000");
  DeploymentConfig cfg;
  cfg.shape = {1, 2048, state.range(0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(AnalyzeNetwork(model, hw, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AnalyzeNetwork)->Arg(1)->Arg(128)->Arg(2048);

void BM_RunSweep(benchmark::State& state) {
  SweepRequest req;
  req.axis = SweepAxis::kBatch;
  for (int b = 1; b <= 512; b *= 2) req.values.push_back(b);
  req.model = PresetModel("llama-2-13b");
  req.hardware = PresetHardware("nvidia-a6000");
  req.base.shape = {1, 512, 64};
  req.variants = {ParseVariant("fp16:w=16"), ParseVariant("w4:w=4"),
                  ParseVariant("w4kv4:w=4,kv=4")};
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunSweep(req));
  }
}
BENCHMARK(BM_RunSweep)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace llm_roofline

BENCHMARK_MAIN();
