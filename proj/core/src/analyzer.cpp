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

#include "llm_roofline/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "llm_roofline/errors.hpp"

namespace llm_roofline {
namespace {

struct StepTotals {
  Bytes bytes = 0;
  Seconds time = 0;
};

int64_t Instances(const OpProfile& op, int64_t active_layers) {
  return op.scope == LayerScope::kGlobal
             ? 1
             : op.instances_per_layer * active_layers;
}

StepTotals StageTotals(const ModelConfig& model, const HardwareSpec& hw,
                       const DeploymentConfig& cfg, const Stage& stage,
                       int64_t active_layers) {
  StepTotals totals;
  for (const OpProfile& op : BuildOpGraph(model, cfg.shape, stage, cfg.quant,
                                          cfg.fused_attention)) {
    const LayerReport row = AnalyzeOp(op, hw, cfg, active_layers);
    totals.bytes += op.total_bytes() * static_cast<double>(row.instances);
    totals.time += row.time * static_cast<double>(row.instances);
  }
  return totals;
}

// One tensor in the single-layer liveness schedule. Steps are numbered in
// dataflow order; the layer input exists before step 0.
struct LiveTensor {
  Bytes bytes;
  int produced;
  int last_use;
};

}  // namespace

int64_t ActiveLayers(const ModelConfig& model, const DeploymentConfig& cfg) {
  const double fraction = cfg.active_layer_fraction;
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw RooflineError(ErrorCode::kInvalidArgument, "active_layer_fraction",
                        "active_layer_fraction must be in (0, 1]");
  }
  const auto layers = static_cast<int64_t>(
      std::llround(fraction * static_cast<double>(model.num_layers)));
  if (layers < 1) {
    throw RooflineError(ErrorCode::kInvalidArgument, "active_layer_fraction",
                        "active_layer_fraction leaves no active layer");
  }
  return layers;
}

void ValidateDeployment(const ModelConfig& model, const DeploymentConfig& cfg,
                        const HardwareSpec* hw) {
  cfg.shape.Validate();
  cfg.quant.Validate();
  ActiveLayers(model, cfg);
  if (hw != nullptr && cfg.offload) hw->FindLink(cfg.offload->link);
}

LayerReport AnalyzeOp(const OpProfile& op, const HardwareSpec& hw,
                      const DeploymentConfig& cfg, int64_t active_layers) {
  const Datatype dtype = ResolveComputeDatatype(cfg.quant, hw);
  const double peak = hw.Peak(dtype);
  const Bytes total = op.total_bytes();

  const Bytes offloaded = cfg.offload ? op.bytes_weights : 0.0;
  const Bytes resident = total - offloaded;
  Seconds memory_time = resident / hw.bandwidth;
  double effective_bandwidth = hw.bandwidth;
  if (cfg.offload) {
    const Link& link = hw.FindLink(cfg.offload->link);
    memory_time = std::max(memory_time, offloaded / link.bandwidth);
    if (memory_time > 0) effective_bandwidth = total / memory_time;
  }

  LayerReport row;
  row.kind = op.kind;
  row.stage = op.stage;
  row.ops = op.ops;
  row.total_bytes = total;
  row.arithmetic_intensity = total > 0 ? op.ops / total : 0.0;
  const RooflinePoint point = AttainablePerformance(
      hw, dtype, row.arithmetic_intensity, effective_bandwidth);
  row.attainable = point.attainable;
  row.bound = point.bound;
  row.time = std::max(op.ops / peak, memory_time);
  row.instances = Instances(op, active_layers);
  return row;
}

Seconds StepLatency(const ModelConfig& model, const HardwareSpec& hw,
                    const DeploymentConfig& cfg, const Stage& stage) {
  return StageTotals(model, hw, cfg, stage, ActiveLayers(model, cfg)).time;
}

NetworkReport AnalyzeNetwork(const ModelConfig& model, const HardwareSpec& hw,
                             const DeploymentConfig& cfg) {
  ValidateDeployment(model, cfg, &hw);
  const int64_t layers = ActiveLayers(model, cfg);
  const InferenceShape& shape = cfg.shape;

  NetworkReport report;
  report.model = model.name;
  report.hardware = hw.name;

  // Time attributed to each op name across the whole run, in first-seen
  // (dataflow) order so ties resolve to the earlier op.
  std::vector<std::pair<OpKind, Seconds>> share;
  auto run_step = [&](const Stage& stage, bool keep_rows) {
    Seconds step = 0;
    for (const OpProfile& op : BuildOpGraph(model, shape, stage, cfg.quant,
                                            cfg.fused_attention)) {
      const LayerReport row = AnalyzeOp(op, hw, cfg, layers);
      const Seconds contribution =
          row.time * static_cast<double>(row.instances);
      step += contribution;
      auto it = std::find_if(share.begin(), share.end(),
                             [&](const auto& e) { return e.first == op.kind; });
      if (it == share.end()) {
        share.emplace_back(op.kind, contribution);
      } else {
        it->second += contribution;
      }
      if (keep_rows) report.per_op.push_back(row);
    }
    return step;
  };

  if (shape.prompt_len > 0) {
    report.prefill_latency = run_step(Stage::Prefill(), true);
  }
  for (int64_t i = 0; i < shape.gen_len; ++i) {
    const Seconds step =
        run_step(Stage::Decode(shape.prompt_len + i), i == 0);
    if (i == 0) report.decode_latency_first = step;
    if (i == shape.gen_len - 1) report.decode_latency_last = step;
    report.decode_latency_total += step;
  }
  report.total_latency = report.prefill_latency + report.decode_latency_total;
  if (shape.gen_len > 0 && report.decode_latency_total > 0) {
    report.throughput = static_cast<double>(shape.batch_size * shape.gen_len) /
                        report.decode_latency_total;
  }

  report.memory =
      MemoryFootprint(model, cfg, shape.prompt_len + shape.gen_len);
  if (shape.gen_len > 0) {
    MemoryBreakdown decode = report.memory;
    decode.activations_peak = ActivationPeak(
        model, cfg, 1, std::max<int64_t>(shape.prompt_len + shape.gen_len, 1));
    decode.total = decode.weights + decode.kv_cache + decode.activations_peak;
    report.decode_memory = decode;
  }
  const Bytes on_device =
      report.memory.total - (cfg.offload ? report.memory.weights : 0.0);
  report.capacity_exceeded = on_device > hw.capacity;

  Seconds worst = -1;
  for (const auto& [kind, seconds] : share) {
    if (seconds > worst) {
      worst = seconds;
      report.bottleneck = std::string(OpName(kind));
    }
  }
  return report;
}

Bytes ActivationPeak(const ModelConfig& model, const DeploymentConfig& cfg,
                     int64_t tokens, int64_t span) {
  if (tokens <= 0) return 0;
  const double b = static_cast<double>(cfg.shape.batch_size);
  const double t = static_cast<double>(tokens);
  const double s = static_cast<double>(span);
  const double ba = cfg.quant.act_bytes();
  const Bytes hidden = b * t * static_cast<double>(model.hidden_size) * ba;
  const Bytes inter =
      b * t * static_cast<double>(model.intermediate_size) * ba;
  const Bytes scores = b * static_cast<double>(model.num_heads) * t * s * ba;

  // Steps: norm, q, k, v, [qk, softmax, sv | fused], o, add, norm, gate, up,
  // down, add.
  std::vector<LiveTensor> tensors;
  int step = 0;
  const int norm1 = step++;
  const int q_proj = step++;
  step++;  // k_proj writes to the cache
  const int v_proj = step++;
  int attention_out;
  if (cfg.fused_attention) {
    attention_out = step++;
    tensors.push_back({hidden, q_proj, attention_out});  // q
  } else {
    const int qk = step++;
    const int softmax = step++;
    attention_out = step++;
    tensors.push_back({hidden, q_proj, qk});           // q
    tensors.push_back({scores, qk, softmax});          // scores
    tensors.push_back({scores, softmax, attention_out});  // probabilities
  }
  const int o_proj = step++;
  const int add1 = step++;
  const int norm2 = step++;
  const int gate = step++;
  const int up = step++;
  const int down = step++;
  const int add2 = step++;
  tensors.push_back({hidden, -1, add1});               // layer input
  tensors.push_back({hidden, norm1, v_proj});          // normed input
  tensors.push_back({hidden, attention_out, o_proj});  // attention context
  tensors.push_back({hidden, o_proj, add1});           // o_proj output
  tensors.push_back({hidden, add1, add2});             // residual stream
  tensors.push_back({hidden, norm2, up});              // normed residual
  tensors.push_back({inter, gate, down});
  tensors.push_back({inter, up, down});
  tensors.push_back({hidden, down, add2});
  tensors.push_back({hidden, add2, add2});  // layer output

  Bytes peak = hidden;  // embedding output
  for (int k = 0; k < step; ++k) {
    Bytes live = 0;
    for (const LiveTensor& tensor : tensors) {
      if (tensor.produced <= k && k <= tensor.last_use) live += tensor.bytes;
    }
    peak = std::max(peak, live);
  }
  if (model.include_lm_head) {
    const Bytes logits = b * static_cast<double>(model.vocab_size) * ba;
    peak = std::max(peak, hidden + logits);
  }
  return peak;
}

MemoryBreakdown MemoryFootprint(const ModelConfig& model,
                                const DeploymentConfig& cfg, int64_t context) {
  const int64_t layers = ActiveLayers(model, cfg);
  const InferenceShape& shape = cfg.shape;
  MemoryBreakdown memory;
  memory.weights =
      static_cast<double>(CountParams(model)) * cfg.quant.weight_bytes();
  memory.kv_cache = 2.0 * static_cast<double>(layers) *
                    static_cast<double>(shape.batch_size) *
                    static_cast<double>(std::max<int64_t>(context, 0)) *
                    static_cast<double>(model.kv_dim()) *
                    cfg.quant.kv_bytes();
  Bytes activations = 0;
  if (shape.prompt_len > 0) {
    activations = ActivationPeak(model, cfg, shape.prompt_len,
                                 shape.prompt_len);
  }
  if (shape.gen_len > 0) {
    activations = std::max(
        activations,
        ActivationPeak(model, cfg, 1, std::max<int64_t>(context, 1)));
  }
  memory.activations_peak = activations;
  memory.total = memory.weights + memory.kv_cache + memory.activations_peak;
  return memory;
}

FusionComparison CompareFusion(const ModelConfig& model,
                               const HardwareSpec& hw,
                               const DeploymentConfig& cfg) {
  ValidateDeployment(model, cfg, &hw);
  const int64_t layers = ActiveLayers(model, cfg);
  DeploymentConfig unfused = cfg;
  unfused.fused_attention = false;
  DeploymentConfig fused = cfg;
  fused.fused_attention = true;

  FusionComparison result;
  auto accumulate = [&](FusionDelta& delta, const Stage& stage) {
    const StepTotals before = StageTotals(model, hw, unfused, stage, layers);
    const StepTotals after = StageTotals(model, hw, fused, stage, layers);
    delta.bytes_unfused += before.bytes;
    delta.time_unfused += before.time;
    delta.bytes_fused += after.bytes;
    delta.time_fused += after.time;
  };
  if (cfg.shape.prompt_len > 0) accumulate(result.prefill, Stage::Prefill());
  for (int64_t i = 0; i < cfg.shape.gen_len; ++i) {
    accumulate(result.decode, Stage::Decode(cfg.shape.prompt_len + i));
  }
  return result;
}

}  // namespace llm_roofline
