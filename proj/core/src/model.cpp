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

#include "llm_roofline/model.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "llm_roofline/errors.hpp"

namespace llm_roofline {
namespace {

[[noreturn]] void ThrowInvalid(const std::string& key,
                               const std::string& why) {
  throw RooflineError(ErrorCode::kInvalidDimension, key,
                      "invalid dimension '" + key + "': " + why);
}

int64_t RequiredDim(const nlohmann::json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) {
    throw RooflineError(ErrorCode::kMissingField, key,
                        "missing required field '" + key + "'");
  }
  if (!it->is_number_integer()) {
    ThrowInvalid(key, "expected an integer");
  }
  return it->get<int64_t>();
}

bool OptionalBool(const nlohmann::json& doc, const std::string& key,
                  bool fallback) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) ThrowInvalid(key, "expected a boolean");
  return it->get<bool>();
}

bool IsAllowed(int bits, std::initializer_list<int> allowed) {
  return std::find(allowed.begin(), allowed.end(), bits) != allowed.end();
}

}  // namespace

void ModelConfig::Validate() const {
  const std::pair<const char*, int64_t> dims[] = {
      {"hidden_size", hidden_size},
      {"intermediate_size", intermediate_size},
      {"num_hidden_layers", num_layers},
      {"num_attention_heads", num_heads},
      {"num_key_value_heads", num_kv_heads},
      {"vocab_size", vocab_size},
  };
  for (const auto& [key, value] : dims) {
    if (value < 1) ThrowInvalid(key, "must be >= 1");
  }
  if (hidden_size % num_heads != 0) {
    ThrowInvalid("num_attention_heads",
                 "hidden_size " + std::to_string(hidden_size) +
                     " is not divisible by " + std::to_string(num_heads));
  }
  if (num_heads % num_kv_heads != 0) {
    ThrowInvalid("num_key_value_heads",
                 "num_attention_heads " + std::to_string(num_heads) +
                     " is not divisible by " + std::to_string(num_kv_heads));
  }
}

void InferenceShape::Validate() const {
  if (batch_size < 1) {
    throw RooflineError(ErrorCode::kInvalidArgument, "batch_size",
                        "batch_size must be >= 1");
  }
  if (prompt_len < 0) {
    throw RooflineError(ErrorCode::kInvalidArgument, "prompt_len",
                        "prompt_len must be >= 0");
  }
  if (gen_len < 0) {
    throw RooflineError(ErrorCode::kInvalidArgument, "gen_len",
                        "gen_len must be >= 0");
  }
  if (prompt_len + gen_len < 1) {
    throw RooflineError(ErrorCode::kInvalidArgument, "prompt_len",
                        "prompt_len + gen_len must be >= 1");
  }
}

void QuantSpec::Validate() const {
  if (!IsAllowed(w_bits, {1, 2, 4, 8, 16})) {
    throw RooflineError(ErrorCode::kInvalidArgument, "w_bits",
                        "w_bits must be one of 1, 2, 4, 8, 16");
  }
  if (!IsAllowed(a_bits, {4, 8, 16})) {
    throw RooflineError(ErrorCode::kInvalidArgument, "a_bits",
                        "a_bits must be one of 4, 8, 16");
  }
  if (!IsAllowed(kv_bits, {1, 2, 4, 8, 16})) {
    throw RooflineError(ErrorCode::kInvalidArgument, "kv_bits",
                        "kv_bits must be one of 1, 2, 4, 8, 16");
  }
}

std::string_view StageName(const Stage& stage) {
  return stage.is_prefill() ? "prefill" : "decode";
}

std::string_view OpName(OpKind kind) {
  switch (kind) {
    case OpKind::kQProj:
      return "q_proj";
    case OpKind::kKProj:
      return "k_proj";
    case OpKind::kVProj:
      return "v_proj";
    case OpKind::kOProj:
      return "o_proj";
    case OpKind::kGateProj:
      return "gate_proj";
    case OpKind::kUpProj:
      return "up_proj";
    case OpKind::kDownProj:
      return "down_proj";
    case OpKind::kQkMatmul:
      return "qk_matmul";
    case OpKind::kSvMatmul:
      return "sv_matmul";
    case OpKind::kSoftmax:
      return "softmax";
    case OpKind::kNorm:
      return "norm";
    case OpKind::kAdd:
      return "add";
    case OpKind::kEmbedding:
      return "embedding";
    case OpKind::kLmHead:
      return "lm_head";
    case OpKind::kFusedAttention:
      return "fused_attention";
  }
  return "unknown";
}

ModelConfig LoadModelConfig(const nlohmann::json& doc,
                            std::string_view default_name) {
  if (!doc.is_object()) {
    throw RooflineError(ErrorCode::kInvalidArgument, "model",
                        "model config must be a JSON object");
  }
  ModelConfig cfg;
  cfg.name = std::string(default_name);
  if (auto it = doc.find("name"); it != doc.end() && it->is_string()) {
    cfg.name = it->get<std::string>();
  }
  cfg.hidden_size = RequiredDim(doc, "hidden_size");
  cfg.intermediate_size = RequiredDim(doc, "intermediate_size");
  cfg.num_layers = RequiredDim(doc, "num_hidden_layers");
  cfg.num_heads = RequiredDim(doc, "num_attention_heads");
  cfg.vocab_size = RequiredDim(doc, "vocab_size");
  if (auto it = doc.find("num_key_value_heads");
      it != doc.end() && !it->is_null()) {
    cfg.num_kv_heads = RequiredDim(doc, "num_key_value_heads");
  } else {
    cfg.num_kv_heads = cfg.num_heads;
  }
  cfg.tie_word_embeddings = OptionalBool(doc, "tie_word_embeddings", false);
  cfg.include_lm_head = OptionalBool(doc, "include_lm_head", true);
  cfg.Validate();
  return cfg;
}

ModelConfig LoadModelConfig(std::string_view text,
                            std::string_view default_name) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw RooflineError(ErrorCode::kInvalidArgument, "model",
                        "model config is not well-formed JSON");
  }
  return LoadModelConfig(doc, default_name);
}

int64_t CountParams(const ModelConfig& cfg) {
  const int64_t d = cfg.hidden_size;
  const int64_t di = cfg.intermediate_size;
  const int64_t per_layer = 4 * d * d + 3 * d * di + 2 * d;
  int64_t total = cfg.num_layers * per_layer + d + cfg.vocab_size * d;
  if (cfg.include_lm_head && !cfg.tie_word_embeddings) {
    total += cfg.vocab_size * d;
  }
  return total;
}

std::vector<OpProfile> BuildOpGraph(const ModelConfig& cfg,
                                    const InferenceShape& shape,
                                    const Stage& stage, const QuantSpec& quant,
                                    bool fused_attention) {
  const double b = static_cast<double>(shape.batch_size);
  const double d = static_cast<double>(cfg.hidden_size);
  const double di = static_cast<double>(cfg.intermediate_size);
  const double h = static_cast<double>(cfg.num_heads);
  const double dkv = static_cast<double>(cfg.kv_dim());
  const double vocab = static_cast<double>(cfg.vocab_size);
  const double ba = quant.act_bytes();
  const double bw = quant.weight_bytes();
  const double bkv = quant.kv_bytes();

  // Tokens processed this step and the attention span.
  const double t =
      stage.is_prefill() ? static_cast<double>(shape.prompt_len) : 1.0;
  const double s = stage.is_prefill()
                       ? static_cast<double>(shape.prompt_len)
                       : static_cast<double>(stage.context_len + 1);

  std::vector<OpProfile> ops;
  ops.reserve(16);
  auto emit = [&](OpKind kind) -> OpProfile& {
    OpProfile& op = ops.emplace_back();
    op.kind = kind;
    op.stage = stage;
    return op;
  };
  auto projection = [&](OpKind kind, double in_dim, double out_dim,
                        double out_elem_bytes) {
    OpProfile& op = emit(kind);
    op.ops = 2.0 * b * t * in_dim * out_dim;
    op.bytes_weights = in_dim * out_dim * bw;
    op.bytes_act_in = b * t * in_dim * ba;
    op.bytes_act_out = b * t * out_dim * out_elem_bytes;
  };

  {
    OpProfile& op = emit(OpKind::kEmbedding);
    op.scope = LayerScope::kGlobal;
    op.bytes_weights = b * t * d * bw;
    op.bytes_act_out = b * t * d * ba;
  }

  const double tokens_hidden = b * t * d;
  {
    OpProfile& op = emit(OpKind::kNorm);
    op.ops = kNormOpsPerElem * tokens_hidden;
    op.bytes_act_in = tokens_hidden * ba;
    op.bytes_act_out = tokens_hidden * ba;
    op.instances_per_layer = 2;
  }

  projection(OpKind::kQProj, d, d, ba);
  projection(OpKind::kKProj, d, d, bkv);
  projection(OpKind::kVProj, d, d, bkv);

  const double score_elems = b * h * t * s;
  const double matmul_ops = 2.0 * b * t * s * d;
  const double query_bytes = b * t * d * ba;
  const double cache_bytes = b * s * dkv * bkv;
  const double score_bytes = score_elems * ba;
  const double context_out_bytes = b * t * d * ba;
  if (fused_attention) {
    OpProfile& op = emit(OpKind::kFusedAttention);
    op.ops = 2.0 * matmul_ops + kSoftmaxOpsPerElem * score_elems;
    op.bytes_act_in = query_bytes;
    op.bytes_kv = 2.0 * cache_bytes;
    op.bytes_act_out = context_out_bytes;
  } else {
    OpProfile& qk = emit(OpKind::kQkMatmul);
    qk.ops = matmul_ops;
    qk.bytes_act_in = query_bytes;
    qk.bytes_kv = cache_bytes;
    qk.bytes_act_out = score_bytes;

    OpProfile& softmax = emit(OpKind::kSoftmax);
    softmax.ops = kSoftmaxOpsPerElem * score_elems;
    softmax.bytes_act_in = score_bytes;
    softmax.bytes_act_out = score_bytes;

    OpProfile& sv = emit(OpKind::kSvMatmul);
    sv.ops = matmul_ops;
    sv.bytes_act_in = score_bytes;
    sv.bytes_kv = cache_bytes;
    sv.bytes_act_out = context_out_bytes;
  }

  projection(OpKind::kOProj, d, d, ba);

  {
    OpProfile& op = emit(OpKind::kAdd);
    op.ops = kAddOpsPerElem * tokens_hidden;
    op.bytes_act_in = tokens_hidden * ba;
    op.bytes_act_out = tokens_hidden * ba;
    op.instances_per_layer = 2;
  }

  projection(OpKind::kGateProj, d, di, ba);
  projection(OpKind::kUpProj, d, di, ba);
  projection(OpKind::kDownProj, di, d, ba);

  if (cfg.include_lm_head) {
    // Only the last position of each sequence is projected to logits.
    OpProfile& op = emit(OpKind::kLmHead);
    op.scope = LayerScope::kGlobal;
    op.ops = 2.0 * b * d * vocab;
    op.bytes_weights = d * vocab * bw;
    op.bytes_act_in = b * d * ba;
    op.bytes_act_out = b * vocab * ba;
  }
  return ops;
}

}  // namespace llm_roofline
