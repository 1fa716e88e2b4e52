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

#ifndef LLM_ROOFLINE_HARDWARE_HPP_
#define LLM_ROOFLINE_HARDWARE_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "llm_roofline/model.hpp"

namespace llm_roofline {

// Declared in cast-up order: narrower first; at equal width the integer
// type precedes the float type.
enum class Datatype { kINT4, kFP4, kINT8, kFP8, kFP16, kFP32 };

inline constexpr Datatype kAllDatatypes[] = {
    Datatype::kINT4, Datatype::kFP4,  Datatype::kINT8,
    Datatype::kFP8,  Datatype::kFP16, Datatype::kFP32};

std::string_view DatatypeName(Datatype dtype);
std::optional<Datatype> ParseDatatype(std::string_view name);
int DatatypeBits(Datatype dtype);
bool IsIntegerDatatype(Datatype dtype);

struct Link {
  std::string name;
  double bandwidth = 0;  // bytes/s

  bool operator==(const Link&) const = default;
};

struct HardwareSpec {
  std::string name;
  double bandwidth = 0;  // bytes/s, main device memory
  double capacity = 0;   // bytes
  std::map<Datatype, double> compute;  // ops/s
  std::vector<Link> links;

  bool Supports(Datatype dtype) const { return compute.contains(dtype); }
  // Throws kUnsupportedDatatype.
  double Peak(Datatype dtype) const;
  // Throws kUnknownLink.
  const Link& FindLink(std::string_view link_name) const;

  void Validate() const;
  bool operator==(const HardwareSpec&) const = default;
};

enum class Bound { kMemory, kCompute };

std::string_view BoundName(Bound bound);

struct RooflinePoint {
  double arithmetic_intensity = 0;  // ops/byte
  double attainable = 0;            // ops/s
  Bound bound = Bound::kMemory;
};

// Parses name, bandwidth_bytes_per_s, capacity_bytes, compute (dtype ->
// ops/s) and links ([{name, bandwidth_bytes_per_s}]).
HardwareSpec LoadHardwareSpec(const nlohmann::json& document,
                              std::string_view default_name = "custom");

// attainable = min(peak, ai * bandwidth). An intensity exactly at the turning
// point is classified compute-bound. effective_bandwidth <= 0 means
// hw.bandwidth.
RooflinePoint AttainablePerformance(const HardwareSpec& hw, Datatype dtype,
                                    double arithmetic_intensity,
                                    double effective_bandwidth = 0);

double TurningPoint(const HardwareSpec& hw, Datatype dtype);

// Picks the datatype the multiply actually runs in. Prefers the narrowest
// supported type at least max(w_bits, a_bits) wide; at equal width an
// integer type wins when both operands are sub-16-bit. Falls back to FP16.
Datatype ResolveComputeDatatype(const QuantSpec& quant, const HardwareSpec& hw);

}  // namespace llm_roofline

#endif  // LLM_ROOFLINE_HARDWARE_HPP_
