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

// Decoder-only transformer description and the analytical operation graph
// for one forward step (prefill or a single decode step).

#ifndef LLM_ROOFLINE_MODEL_HPP_
#define LLM_ROOFLINE_MODEL_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace llm_roofline {

// Operation counts and byte counts are held as doubles. Element counts times
// bit widths stay integral well below 2^53 for any realistic shape, and the
// division by 8 is exact in binary floating point, so fractional
// bytes-per-element (e.g. 4-bit weights) lose nothing.
using Ops = double;
using Bytes = double;
using Seconds = double;

struct ModelConfig {
  std::string name;
  int64_t hidden_size = 0;
  int64_t intermediate_size = 0;
  int64_t num_layers = 0;
  int64_t num_heads = 0;
  int64_t num_kv_heads = 0;
  int64_t vocab_size = 0;
  bool include_lm_head = true;
  // A tied head reuses the embedding table, so it adds no parameters but is
  // still evaluated (and still streams its weights) every step.
  bool tie_word_embeddings = false;

  int64_t head_dim() const { return hidden_size / num_heads; }
  // Width of the K (or V) projection output: d * h_kv / h.
  int64_t kv_dim() const { return hidden_size / num_heads * num_kv_heads; }

  // Throws RooflineError(kInvalidDimension) naming the offending key.
  void Validate() const;

  bool operator==(const ModelConfig&) const = default;
};

struct InferenceShape {
  int64_t batch_size = 1;
  int64_t prompt_len = 0;
  int64_t gen_len = 0;

  void Validate() const;
  bool operator==(const InferenceShape&) const = default;
};

// Prefill processes the whole prompt. A decode step with context_len c has c
// tokens in the KV cache, appends its own K/V first, and attends over c + 1.
struct Stage {
  enum class Kind { kPrefill, kDecode };

  Kind kind = Kind::kPrefill;
  int64_t context_len = 0;

  static Stage Prefill() { return {Kind::kPrefill, 0}; }
  static Stage Decode(int64_t context_len) {
    return {Kind::kDecode, context_len};
  }
  bool is_prefill() const { return kind == Kind::kPrefill; }
  bool is_decode() const { return kind == Kind::kDecode; }
  bool operator==(const Stage&) const = default;
};

std::string_view StageName(const Stage& stage);

struct QuantSpec {
  int w_bits = 16;
  int a_bits = 16;
  int kv_bits = 16;

  double weight_bytes() const { return w_bits / 8.0; }
  double act_bytes() const { return a_bits / 8.0; }
  double kv_bytes() const { return kv_bits / 8.0; }

  // Throws RooflineError(kInvalidArgument) for widths outside the supported
  // sets: weights/KV {1,2,4,8,16}, activations {4,8,16}.
  void Validate() const;
  bool operator==(const QuantSpec&) const = default;
};

enum class OpKind {
  kQProj,
  kKProj,
  kVProj,
  kOProj,
  kGateProj,
  kUpProj,
  kDownProj,
  kQkMatmul,
  kSvMatmul,
  kSoftmax,
  kNorm,
  kAdd,
  kEmbedding,
  kLmHead,
  kFusedAttention,
};

std::string_view OpName(OpKind kind);

enum class LayerScope { kPerLayer, kGlobal };

struct OpProfile {
  OpKind kind = OpKind::kQProj;
  Stage stage;
  Ops ops = 0;
  Bytes bytes_weights = 0;
  Bytes bytes_act_in = 0;
  Bytes bytes_act_out = 0;
  Bytes bytes_kv = 0;
  int64_t instances_per_layer = 1;
  LayerScope scope = LayerScope::kPerLayer;

  std::string_view name() const { return OpName(kind); }
  Bytes total_bytes() const {
    return bytes_weights + bytes_act_in + bytes_act_out + bytes_kv;
  }
};

// Elementwise cost constants. The operation counts per element and the
// two-element traffic (read input, write output) reproduce the published
// Llama-2-7b per-layer roofline table exactly.
inline constexpr double kSoftmaxOpsPerElem = 5.0;
inline constexpr double kNormOpsPerElem = 7.0;
inline constexpr double kAddOpsPerElem = 1.0;
// The residual operand of "add" is modeled as already resident: one read,
// one write.
inline constexpr double kElementwiseTensorsMoved = 2.0;

// Parses a model-card style document (hidden_size, intermediate_size,
// num_hidden_layers, num_attention_heads, optional num_key_value_heads,
// vocab_size, optional tie_word_embeddings). num_key_value_heads defaults to
// num_attention_heads.
ModelConfig LoadModelConfig(const nlohmann::json& document,
                            std::string_view default_name = "custom");
ModelConfig LoadModelConfig(std::string_view text,
                            std::string_view default_name = "custom");

// L*(4d^2 + 3*d*d_i + 2d) + d + V*d, plus V*d for an untied head.
int64_t CountParams(const ModelConfig& cfg);

// Ops in dataflow order: embedding, norm, q/k/v, qk, softmax, sv (or the
// fused attention op), o, add, gate, up, down, lm_head. norm and add carry
// instances_per_layer = 2.
std::vector<OpProfile> BuildOpGraph(const ModelConfig& cfg,
                                    const InferenceShape& shape,
                                    const Stage& stage, const QuantSpec& quant,
                                    bool fused_attention);

}  // namespace llm_roofline

#endif  // LLM_ROOFLINE_MODEL_HPP_
