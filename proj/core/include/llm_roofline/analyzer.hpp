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

#ifndef LLM_ROOFLINE_ANALYZER_HPP_
#define LLM_ROOFLINE_ANALYZER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "llm_roofline/hardware.hpp"
#include "llm_roofline/model.hpp"

namespace llm_roofline {

struct OffloadConfig {
  enum class What { kWeights };

  What what = What::kWeights;
  std::string link;

  bool operator==(const OffloadConfig&) const = default;
};

struct DeploymentConfig {
  InferenceShape shape;
  QuantSpec quant;
  bool fused_attention = false;
  std::optional<OffloadConfig> offload;
  double active_layer_fraction = 1.0;

  bool operator==(const DeploymentConfig&) const = default;
};

// round(fraction * L). Throws kInvalidArgument when the fraction is outside
// (0, 1] or rounds to zero layers.
int64_t ActiveLayers(const ModelConfig& model, const DeploymentConfig& cfg);

// Checks shape, quant, layer fraction and (when hw is given) the offload
// link. Throws RooflineError.
void ValidateDeployment(const ModelConfig& model, const DeploymentConfig& cfg,
                        const HardwareSpec* hw = nullptr);

struct LayerReport {
  OpKind kind = OpKind::kQProj;
  Stage stage;
  Ops ops = 0;
  Bytes total_bytes = 0;
  double arithmetic_intensity = 0;
  double attainable = 0;
  Bound bound = Bound::kMemory;
  Seconds time = 0;     // one instance
  int64_t instances = 1;  // instances_per_layer * active layers, or 1 (global)

  std::string_view name() const { return OpName(kind); }
};

struct MemoryBreakdown {
  Bytes weights = 0;
  Bytes kv_cache = 0;
  Bytes activations_peak = 0;
  Bytes total = 0;
};

struct NetworkReport {
  std::string model;
  std::string hardware;
  Seconds prefill_latency = 0;
  std::optional<Seconds> decode_latency_first;  // context n_p
  std::optional<Seconds> decode_latency_last;   // context n_p + n_g - 1
  Seconds decode_latency_total = 0;
  Seconds total_latency = 0;
  std::optional<double> throughput;  // generated tokens/s, absent for n_g = 0
  MemoryBreakdown memory;            // at context n_p + n_g
  // Same context, counting only the decode step's activations. Absent for
  // n_g = 0.
  std::optional<MemoryBreakdown> decode_memory;
  bool capacity_exceeded = false;
  // Prefill rows (when n_p > 0) followed by the first decode step's rows
  // (when n_g > 0).
  std::vector<LayerReport> per_op;
  std::string bottleneck;
};

// time = max(ops / peak, resident_bytes / device_bw, offloaded_bytes /
// link_bw). Compute and memory overlap fully inside one op.
LayerReport AnalyzeOp(const OpProfile& op, const HardwareSpec& hw,
                      const DeploymentConfig& cfg,
                      int64_t active_layers = 1);

// Serialized time of one forward step: per-layer ops weighted by their
// instances over the active layers, plus the global ops.
Seconds StepLatency(const ModelConfig& model, const HardwareSpec& hw,
                    const DeploymentConfig& cfg, const Stage& stage);

NetworkReport AnalyzeNetwork(const ModelConfig& model, const HardwareSpec& hw,
                             const DeploymentConfig& cfg);

// Weights and KV cache at `context` tokens plus the activation peak from a
// liveness walk: the prefill pass (when n_p > 0) and a decode step attending
// over `context` tokens (when n_g > 0). A tensor is live from the step that
// produces it through its last consumer; K/V projections write straight into
// the cache and are not counted as activations.
MemoryBreakdown MemoryFootprint(const ModelConfig& model,
                                const DeploymentConfig& cfg, int64_t context);

// Peak live activation bytes over one forward pass processing
// `tokens` new tokens that attend over `span` tokens.
Bytes ActivationPeak(const ModelConfig& model, const DeploymentConfig& cfg,
                     int64_t tokens, int64_t span);

struct FusionDelta {
  Bytes bytes_unfused = 0;
  Bytes bytes_fused = 0;
  Seconds time_unfused = 0;
  Seconds time_fused = 0;

  Bytes bytes_saved() const { return bytes_unfused - bytes_fused; }
  Seconds time_saved() const { return time_unfused - time_fused; }
  double relative_bytes_saved() const {
    return bytes_unfused > 0 ? bytes_saved() / bytes_unfused : 0.0;
  }
  double relative_time_saved() const {
    return time_unfused > 0 ? time_saved() / time_unfused : 0.0;
  }
};

struct FusionComparison {
  FusionDelta prefill;
  FusionDelta decode;  // summed over every decode step
};

FusionComparison CompareFusion(const ModelConfig& model, const HardwareSpec& hw,
                               const DeploymentConfig& cfg);

}  // namespace llm_roofline

#endif  // LLM_ROOFLINE_ANALYZER_HPP_
