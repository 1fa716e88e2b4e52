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

#ifndef LLM_ROOFLINE_SWEEP_HPP_
#define LLM_ROOFLINE_SWEEP_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llm_roofline/analyzer.hpp"

namespace llm_roofline {

enum class SweepAxis { kBatch, kPromptLen, kContextLen, kBandwidth };

std::string_view SweepAxisName(SweepAxis axis);
std::optional<SweepAxis> ParseSweepAxis(std::string_view name);

// Which latency a sweep point reports.
enum class LatencyMetric { kTotal, kPrefill, kDecodePerToken };

std::string_view LatencyMetricName(LatencyMetric metric);
std::optional<LatencyMetric> ParseLatencyMetric(std::string_view name);

// Fields left empty inherit from the base deployment.
struct VariantDelta {
  std::string name;
  std::optional<int> w_bits;
  std::optional<int> a_bits;
  std::optional<int> kv_bits;
  std::optional<bool> fused_attention;
  std::optional<std::string> offload_link;
  std::optional<double> active_layer_fraction;

  DeploymentConfig ApplyTo(DeploymentConfig base) const;
};

// Parses "name:w=4,a=16,kv=4,fa=1,offload=pcie,lf=0.5". Throws
// RooflineError(kInvalidArgument) naming the malformed token.
VariantDelta ParseVariant(std::string_view text);

struct SweepRequest {
  SweepAxis axis = SweepAxis::kBatch;
  std::vector<double> values;
  ModelConfig model;
  HardwareSpec hardware;
  DeploymentConfig base;
  std::vector<VariantDelta> variants;  // empty: a single "base" series
  LatencyMetric metric = LatencyMetric::kTotal;

  void Validate() const;
};

struct SeriesPoint {
  double x = 0;
  Seconds latency = 0;
  double throughput = 0;  // 0 when nothing is generated
  Bytes memory = 0;  // decode-stage footprint under kDecodePerToken
  Bound bound = Bound::kMemory;

  bool operator==(const SeriesPoint&) const = default;
};

struct Series {
  std::string name;
  std::vector<SeriesPoint> points;

  bool operator==(const Series&) const = default;
};

// The deployment and hardware actually analyzed for one axis value.
struct SweepPointInputs {
  HardwareSpec hardware;
  DeploymentConfig config;
};
SweepPointInputs SubstituteAxis(const SweepRequest& req,
                                const DeploymentConfig& variant_cfg,
                                double value);

SeriesPoint SummarizePoint(double x, const NetworkReport& report,
                           LatencyMetric metric);

// One Series per variant, in request order. Points are evaluated
// concurrently; ordering matches the request. Errors are rethrown with the
// variant name prefixed to the message.
std::vector<Series> RunSweep(const SweepRequest& req);

enum class SeriesFormat { kCsv, kJsonl };

inline constexpr std::string_view kSeriesCsvHeader =
    "variant,x,latency_s,throughput_tps,memory_bytes,bound";

std::string ExportSeries(const std::vector<Series>& series,
                         SeriesFormat format);
std::vector<Series> ParseSeriesCsv(std::string_view csv);

}  // namespace llm_roofline

#endif  // LLM_ROOFLINE_SWEEP_HPP_
