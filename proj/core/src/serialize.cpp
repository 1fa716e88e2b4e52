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

#include "llm_roofline/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "llm_roofline/errors.hpp"

namespace llm_roofline {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& field, const std::string& why) {
  throw RooflineError(ErrorCode::kInvalidArgument, field, field + ": " + why);
}

const json* Find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

int64_t IntField(const json& obj, const char* key, int64_t fallback) {
  const json* value = Find(obj, key);
  if (value == nullptr) return fallback;
  if (!value->is_number_integer()) Invalid(key, "expected an integer");
  return value->get<int64_t>();
}

bool BoolField(const json& obj, const char* key, bool fallback) {
  const json* value = Find(obj, key);
  if (value == nullptr) return fallback;
  if (!value->is_boolean()) Invalid(key, "expected a boolean");
  return value->get<bool>();
}

double NumberField(const json& obj, const char* key, double fallback) {
  const json* value = Find(obj, key);
  if (value == nullptr) return fallback;
  if (!value->is_number()) Invalid(key, "expected a number");
  return value->get<double>();
}

ModelConfig ResolveModel(const json& body, const PresetRegistry& presets) {
  const json* model = Find(body, "model");
  if (model == nullptr) {
    throw RooflineError(ErrorCode::kMissingField, "model",
                        "missing required field 'model'");
  }
  if (model->is_string()) return presets.Model(model->get<std::string>());
  if (model->is_object()) return LoadModelConfig(*model);
  Invalid("model", "expected a preset name or a config object");
}

HardwareSpec ResolveHardware(const json& body, const PresetRegistry& presets) {
  const json* hw = Find(body, "hardware");
  if (hw == nullptr) {
    throw RooflineError(ErrorCode::kMissingField, "hardware",
                        "missing required field 'hardware'");
  }
  if (hw->is_string()) return presets.Hardware(hw->get<std::string>());
  if (hw->is_object()) return LoadHardwareSpec(*hw);
  Invalid("hardware", "expected a preset name or a spec object");
}

std::optional<OffloadConfig> ParseOffload(const json& opt) {
  const json* offload = Find(opt, "offload");
  if (offload == nullptr) return std::nullopt;
  if (offload->is_string()) {
    return OffloadConfig{OffloadConfig::What::kWeights,
                         offload->get<std::string>()};
  }
  if (!offload->is_object()) {
    Invalid("offload", "expected an object or a link name");
  }
  if (const json* what = Find(*offload, "what");
      what != nullptr && *what != "weights") {
    Invalid("offload.what", "only \"weights\" can be offloaded");
  }
  const json* link = Find(*offload, "link");
  if (link == nullptr || !link->is_string()) {
    throw RooflineError(ErrorCode::kMissingField, "offload.link",
                        "missing required field 'offload.link'");
  }
  return OffloadConfig{OffloadConfig::What::kWeights,
                       link->get<std::string>()};
}

DeploymentConfig ParseDeployment(const json& body) {
  DeploymentConfig cfg;
  const json* shape = Find(body, "shape");
  if (shape == nullptr) {
    throw RooflineError(ErrorCode::kMissingField, "shape",
                        "missing required field 'shape'");
  }
  if (!shape->is_object()) Invalid("shape", "expected an object");
  cfg.shape.batch_size = IntField(*shape, "batch_size", 1);
  cfg.shape.prompt_len = IntField(*shape, "prompt_len", 0);
  cfg.shape.gen_len = IntField(*shape, "gen_len", 0);

  if (const json* opt = Find(body, "optimization")) {
    if (!opt->is_object()) Invalid("optimization", "expected an object");
    cfg.quant.w_bits = static_cast<int>(IntField(*opt, "w_bits", 16));
    cfg.quant.a_bits = static_cast<int>(IntField(*opt, "a_bits", 16));
    cfg.quant.kv_bits = static_cast<int>(IntField(*opt, "kv_bits", 16));
    cfg.fused_attention = BoolField(*opt, "fused_attention", false);
    cfg.offload = ParseOffload(*opt);
    cfg.active_layer_fraction =
        NumberField(*opt, "active_layer_fraction", 1.0);
  }
  return cfg;
}

VariantDelta ParseVariantObject(const json& v) {
  if (v.is_string()) return ParseVariant(v.get<std::string>());
  if (!v.is_object()) Invalid("variants", "expected an object or a string");
  VariantDelta delta;
  const json* name = Find(v, "name");
  if (name == nullptr || !name->is_string()) {
    throw RooflineError(ErrorCode::kMissingField, "variants.name",
                        "every variant needs a name");
  }
  delta.name = name->get<std::string>();
  if (Find(v, "w_bits")) delta.w_bits = IntField(v, "w_bits", 16);
  if (Find(v, "a_bits")) delta.a_bits = IntField(v, "a_bits", 16);
  if (Find(v, "kv_bits")) delta.kv_bits = IntField(v, "kv_bits", 16);
  if (Find(v, "fused_attention")) {
    delta.fused_attention = BoolField(v, "fused_attention", false);
  }
  if (v.contains("offload")) {
    const json& offload = v["offload"];
    if (offload.is_null()) {
      delta.offload_link = "";
    } else if (offload.is_string()) {
      delta.offload_link = offload.get<std::string>();
    } else {
      Invalid("variants.offload", "expected a link name or null");
    }
  }
  if (Find(v, "active_layer_fraction")) {
    delta.active_layer_fraction = NumberField(v, "active_layer_fraction", 1);
  }
  return delta;
}

Json Canonicalize(const Json& value) {
  switch (value.type()) {
    case Json::value_t::object: {
      Json out = Json::object();
      for (const auto& item : value.items()) {
        out[item.key()] = Canonicalize(item.value());
      }
      return out;
    }
    case Json::value_t::array: {
      Json out = Json::array();
      for (const auto& item : value) out.push_back(Canonicalize(item));
      return out;
    }
    case Json::value_t::number_float: {
      const double v = value.get<double>();
      if (!std::isfinite(v)) return nullptr;
      auto integral = [](double x) {
        return x == std::trunc(x) && std::fabs(x) < 9007199254740992.0;
      };
      if (integral(v)) return static_cast<int64_t>(v);
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), "%.6g", v);
      const double rounded = std::strtod(buffer, nullptr);
      // Rounding can land on an integer ("8.73813e+13"); emit it as one so a
      // second pass is a no-op.
      if (integral(rounded)) return static_cast<int64_t>(rounded);
      return rounded;
    }
    default:
      return value;
  }
}

}  // namespace

AnalyzeRequest ParseAnalyzeRequest(const nlohmann::json& body,
                                   const PresetRegistry& presets) {
  if (!body.is_object()) Invalid("body", "expected a JSON object");
  AnalyzeRequest req;
  req.model = ResolveModel(body, presets);
  req.hardware = ResolveHardware(body, presets);
  req.config = ParseDeployment(body);
  ValidateDeployment(req.model, req.config, &req.hardware);
  return req;
}

SweepRequest ParseSweepRequest(const nlohmann::json& body,
                               const PresetRegistry& presets) {
  if (!body.is_object()) Invalid("body", "expected a JSON object");
  SweepRequest req;
  req.model = ResolveModel(body, presets);
  req.hardware = ResolveHardware(body, presets);
  req.base = ParseDeployment(body);

  const json* axis = Find(body, "axis");
  if (axis == nullptr) {
    throw RooflineError(ErrorCode::kMissingField, "axis",
                        "missing required field 'axis'");
  }
  auto parsed_axis =
      axis->is_string() ? ParseSweepAxis(axis->get<std::string>())
                        : std::nullopt;
  if (!parsed_axis) {
    Invalid("axis", "expected one of batch, prompt-len, context-len, bandwidth");
  }
  req.axis = *parsed_axis;

  const json* values = Find(body, "values");
  if (values == nullptr) {
    throw RooflineError(ErrorCode::kMissingField, "values",
                        "missing required field 'values'");
  }
  if (!values->is_array()) Invalid("values", "expected an array");
  for (const json& v : *values) {
    if (!v.is_number()) Invalid("values", "expected numbers");
    req.values.push_back(v.get<double>());
  }

  if (const json* variants = Find(body, "variants")) {
    if (!variants->is_array()) Invalid("variants", "expected an array");
    for (const json& v : *variants) {
      req.variants.push_back(ParseVariantObject(v));
    }
  }
  if (const json* metric = Find(body, "latency_metric")) {
    auto parsed = metric->is_string()
                      ? ParseLatencyMetric(metric->get<std::string>())
                      : std::nullopt;
    if (!parsed) {
      Invalid("latency_metric", "expected one of total, prefill, decode");
    }
    req.metric = *parsed;
  }
  req.Validate();
  return req;
}

Json ToJson(const LayerReport& row) {
  Json out;
  out["op_name"] = row.name();
  out["stage"] = StageName(row.stage);
  out["context_len"] =
      row.stage.is_decode() ? Json(row.stage.context_len) : Json(nullptr);
  out["ops"] = row.ops;
  out["total_bytes"] = row.total_bytes;
  out["arithmetic_intensity"] = row.arithmetic_intensity;
  out["attainable"] = row.attainable;
  out["bound"] = BoundName(row.bound);
  out["time_s"] = row.time;
  out["instances"] = row.instances;
  return out;
}

Json ToJson(const MemoryBreakdown& memory) {
  Json out;
  out["weights"] = memory.weights;
  out["kv_cache"] = memory.kv_cache;
  out["activations_peak"] = memory.activations_peak;
  out["total"] = memory.total;
  return out;
}

Json ToJson(const NetworkReport& report) {
  auto optional = [](const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
  };
  Json out;
  out["model"] = report.model;
  out["hardware"] = report.hardware;
  out["prefill_latency_s"] = report.prefill_latency;
  out["decode_latency_first_s"] = optional(report.decode_latency_first);
  out["decode_latency_last_s"] = optional(report.decode_latency_last);
  out["decode_latency_total_s"] = report.decode_latency_total;
  out["total_latency_s"] = report.total_latency;
  out["throughput_tps"] = optional(report.throughput);
  out["memory"] = ToJson(report.memory);
  out["decode_memory"] =
      report.decode_memory ? ToJson(*report.decode_memory) : Json(nullptr);
  out["capacity_exceeded"] = report.capacity_exceeded;
  out["bottleneck"] = report.bottleneck;
  Json rows = Json::array();
  for (const LayerReport& row : report.per_op) rows.push_back(ToJson(row));
  out["per_op"] = std::move(rows);
  return out;
}

Json ToJson(const std::vector<Series>& series) {
  Json out = Json::array();
  for (const Series& s : series) {
    Json points = Json::array();
    for (const SeriesPoint& p : s.points) {
      Json point;
      point["x"] = p.x;
      point["latency_s"] = p.latency;
      point["throughput_tps"] = p.throughput;
      point["memory_bytes"] = p.memory;
      point["bound"] = BoundName(p.bound);
      points.push_back(std::move(point));
    }
    Json entry;
    entry["name"] = s.name;
    entry["points"] = std::move(points);
    out.push_back(std::move(entry));
  }
  return out;
}

Json ToJson(const ModelConfig& model) {
  Json out;
  out["name"] = model.name;
  out["hidden_size"] = model.hidden_size;
  out["intermediate_size"] = model.intermediate_size;
  out["num_hidden_layers"] = model.num_layers;
  out["num_attention_heads"] = model.num_heads;
  out["num_key_value_heads"] = model.num_kv_heads;
  out["vocab_size"] = model.vocab_size;
  out["tie_word_embeddings"] = model.tie_word_embeddings;
  out["include_lm_head"] = model.include_lm_head;
  return out;
}

Json ToJson(const HardwareSpec& hw) {
  Json out;
  out["name"] = hw.name;
  out["bandwidth_bytes_per_s"] = hw.bandwidth;
  out["capacity_bytes"] = hw.capacity;
  Json compute = Json::object();
  for (const auto& [dtype, peak] : hw.compute) {
    compute[std::string(DatatypeName(dtype))] = peak;
  }
  out["compute"] = std::move(compute);
  Json links = Json::array();
  for (const Link& link : hw.links) {
    Json entry;
    entry["name"] = link.name;
    entry["bandwidth_bytes_per_s"] = link.bandwidth;
    links.push_back(std::move(entry));
  }
  out["links"] = std::move(links);
  return out;
}

std::string CanonicalDump(const Json& value) {
  return Canonicalize(value).dump(2) + "\n";
}

}  // namespace llm_roofline
