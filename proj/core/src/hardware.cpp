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

#include "llm_roofline/hardware.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "llm_roofline/errors.hpp"

namespace llm_roofline {
namespace {

double RequiredPositive(const nlohmann::json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) {
    throw RooflineError(ErrorCode::kMissingField, key,
                        "missing required field '" + key + "'");
  }
  if (!it->is_number() || it->get<double>() <= 0) {
    throw RooflineError(ErrorCode::kInvalidArgument, key,
                        "'" + key + "' must be a positive number");
  }
  return it->get<double>();
}

}  // namespace

std::string_view DatatypeName(Datatype dtype) {
  switch (dtype) {
    case Datatype::kINT4:
      return "INT4";
    case Datatype::kFP4:
      return "FP4";
    case Datatype::kINT8:
      return "INT8";
    case Datatype::kFP8:
      return "FP8";
    case Datatype::kFP16:
      return "FP16";
    case Datatype::kFP32:
      return "FP32";
  }
  return "?";
}

std::optional<Datatype> ParseDatatype(std::string_view name) {
  for (Datatype dtype : kAllDatatypes) {
    if (DatatypeName(dtype) == name) return dtype;
  }
  return std::nullopt;
}

int DatatypeBits(Datatype dtype) {
  switch (dtype) {
    case Datatype::kINT4:
    case Datatype::kFP4:
      return 4;
    case Datatype::kINT8:
    case Datatype::kFP8:
      return 8;
    case Datatype::kFP16:
      return 16;
    case Datatype::kFP32:
      return 32;
  }
  return 0;
}

bool IsIntegerDatatype(Datatype dtype) {
  return dtype == Datatype::kINT4 || dtype == Datatype::kINT8;
}

std::string_view BoundName(Bound bound) {
  return bound == Bound::kCompute ? "compute" : "memory";
}

double HardwareSpec::Peak(Datatype dtype) const {
  auto it = compute.find(dtype);
  if (it == compute.end()) {
    throw RooflineError(ErrorCode::kUnsupportedDatatype, "compute",
                        name + " has no " + std::string(DatatypeName(dtype)) +
                            " compute peak");
  }
  return it->second;
}

const Link& HardwareSpec::FindLink(std::string_view link_name) const {
  for (const Link& link : links) {
    if (link.name == link_name) return link;
  }
  std::string known;
  for (const Link& link : links) {
    known += known.empty() ? link.name : ", " + link.name;
  }
  throw RooflineError(ErrorCode::kUnknownLink, "offload.link",
                      "hardware " + name + " has no link '" +
                          std::string(link_name) + "' (known: " + known + ")");
}

void HardwareSpec::Validate() const {
  if (!(bandwidth > 0)) {
    throw RooflineError(ErrorCode::kInvalidArgument, "bandwidth_bytes_per_s",
                        "bandwidth must be > 0");
  }
  if (capacity < 0) {
    throw RooflineError(ErrorCode::kInvalidArgument, "capacity_bytes",
                        "capacity must be >= 0");
  }
  if (compute.empty()) {
    throw RooflineError(ErrorCode::kMissingField, "compute",
                        "hardware declares no compute peaks");
  }
  for (const auto& [dtype, peak] : compute) {
    if (!(peak > 0)) {
      throw RooflineError(ErrorCode::kInvalidArgument, "compute",
                          std::string(DatatypeName(dtype)) +
                              " peak must be > 0");
    }
  }
  for (const Link& link : links) {
    if (!(link.bandwidth > 0)) {
      throw RooflineError(ErrorCode::kInvalidArgument, "links",
                          "link " + link.name + " bandwidth must be > 0");
    }
  }
}

HardwareSpec LoadHardwareSpec(const nlohmann::json& doc,
                              std::string_view default_name) {
  if (!doc.is_object()) {
    throw RooflineError(ErrorCode::kInvalidArgument, "hardware",
                        "hardware spec must be a JSON object");
  }
  HardwareSpec hw;
  hw.name = std::string(default_name);
  if (auto it = doc.find("name"); it != doc.end() && it->is_string()) {
    hw.name = it->get<std::string>();
  }
  hw.bandwidth = RequiredPositive(doc, "bandwidth_bytes_per_s");
  hw.capacity = RequiredPositive(doc, "capacity_bytes");

  auto compute = doc.find("compute");
  if (compute == doc.end() || !compute->is_object()) {
    throw RooflineError(ErrorCode::kMissingField, "compute",
                        "missing required field 'compute'");
  }
  for (const auto& [key, value] : compute->items()) {
    auto dtype = ParseDatatype(key);
    if (!dtype) {
      throw RooflineError(ErrorCode::kInvalidArgument, "compute",
                          "unknown datatype '" + key + "'");
    }
    if (!value.is_number()) {
      throw RooflineError(ErrorCode::kInvalidArgument, "compute",
                          "peak for " + key + " must be a number");
    }
    hw.compute[*dtype] = value.get<double>();
  }

  if (auto links = doc.find("links"); links != doc.end()) {
    if (!links->is_array()) {
      throw RooflineError(ErrorCode::kInvalidArgument, "links",
                          "'links' must be an array");
    }
    for (const auto& entry : *links) {
      if (!entry.is_object() || !entry.contains("name") ||
          !entry["name"].is_string()) {
        throw RooflineError(ErrorCode::kMissingField, "links.name",
                            "every link needs a name");
      }
      Link link;
      link.name = entry["name"].get<std::string>();
      link.bandwidth = RequiredPositive(entry, "bandwidth_bytes_per_s");
      hw.links.push_back(std::move(link));
    }
  }
  hw.Validate();
  return hw;
}

RooflinePoint AttainablePerformance(const HardwareSpec& hw, Datatype dtype,
                                    double arithmetic_intensity,
                                    double effective_bandwidth) {
  const double peak = hw.Peak(dtype);
  const double bandwidth =
      effective_bandwidth > 0 ? effective_bandwidth : hw.bandwidth;
  const double memory_roof = arithmetic_intensity * bandwidth;
  RooflinePoint point;
  point.arithmetic_intensity = arithmetic_intensity;
  if (memory_roof < peak) {
    point.attainable = memory_roof;
    point.bound = Bound::kMemory;
  } else {
    point.attainable = peak;
    point.bound = Bound::kCompute;
  }
  return point;
}

double TurningPoint(const HardwareSpec& hw, Datatype dtype) {
  return hw.Peak(dtype) / hw.bandwidth;
}

Datatype ResolveComputeDatatype(const QuantSpec& quant,
                                const HardwareSpec& hw) {
  const int needed = std::max(quant.w_bits, quant.a_bits);
  const bool integer_operands = needed < 16;
  std::optional<Datatype> best;
  for (Datatype dtype : kAllDatatypes) {
    if (!hw.Supports(dtype) || DatatypeBits(dtype) < needed) continue;
    if (!best) {
      best = dtype;
      continue;
    }
    if (DatatypeBits(dtype) > DatatypeBits(*best)) break;
    if (IsIntegerDatatype(dtype) == integer_operands &&
        IsIntegerDatatype(*best) != integer_operands) {
      best = dtype;
    }
  }
  return best.value_or(Datatype::kFP16);
}

}  // namespace llm_roofline
