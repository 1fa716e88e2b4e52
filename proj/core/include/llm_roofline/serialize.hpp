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

// JSON wire formats shared by the command-line tool and the HTTP service.

#ifndef LLM_ROOFLINE_SERIALIZE_HPP_
#define LLM_ROOFLINE_SERIALIZE_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "llm_roofline/analyzer.hpp"
#include "llm_roofline/presets.hpp"
#include "llm_roofline/sweep.hpp"

namespace llm_roofline {

using Json = nlohmann::ordered_json;

struct AnalyzeRequest {
  ModelConfig model;
  HardwareSpec hardware;
  DeploymentConfig config;
};

// {"model": name | {...}, "hardware": name | {...},
//  "shape": {"batch_size", "prompt_len", "gen_len"},
//  "optimization": {"w_bits", "a_bits", "kv_bits", "fused_attention",
//                   "offload": {"what": "weights", "link"} | null,
//                   "active_layer_fraction"}}
AnalyzeRequest ParseAnalyzeRequest(const nlohmann::json& body,
                                   const PresetRegistry& presets);

// AnalyzeRequest fields plus "axis", "values", "variants" and
// "latency_metric".
SweepRequest ParseSweepRequest(const nlohmann::json& body,
                               const PresetRegistry& presets);

Json ToJson(const LayerReport& row);
Json ToJson(const MemoryBreakdown& memory);
Json ToJson(const NetworkReport& report);
Json ToJson(const std::vector<Series>& series);
Json ToJson(const ModelConfig& model);
Json ToJson(const HardwareSpec& hw);

// Integral values below 2^53 become JSON integers; every other float is
// rounded to 6 significant digits. Object key order is preserved. The
// CLI and the service both emit through this, so equal inputs give equal
// bytes.
std::string CanonicalDump(const Json& value);

}  // namespace llm_roofline

#endif  // LLM_ROOFLINE_SERIALIZE_HPP_
