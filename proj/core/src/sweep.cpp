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

#include "llm_roofline/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "llm_roofline/errors.hpp"

namespace llm_roofline {
namespace {

[[noreturn]] void BadVariant(std::string_view token, const std::string& why) {
  throw RooflineError(ErrorCode::kInvalidArgument, std::string(token),
                      "malformed variant token '" + std::string(token) +
                          "': " + why);
}

int ParseInt(std::string_view token, std::string_view value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    BadVariant(token, "expected an integer");
  }
  return out;
}

double ParseDouble(std::string_view token, std::string_view value) {
  const std::string copy(value);
  char* end = nullptr;
  const double out = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    BadVariant(token, "expected a number");
  }
  return out;
}

std::string FullPrecision(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields(1);
  bool in_quotes = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

int64_t CountValue(SweepAxis axis, double value) {
  const double rounded = std::round(value);
  if (rounded != value) {
    throw RooflineError(ErrorCode::kInvalidArgument, "values",
                        std::string(SweepAxisName(axis)) +
                            " values must be integers");
  }
  return static_cast<int64_t>(rounded);
}

// Dominant op of the stage the metric looks at, by time share.
Bound DominantBound(const NetworkReport& report, LatencyMetric metric) {
  const LayerReport* best = nullptr;
  double best_time = -1;
  for (const LayerReport& row : report.per_op) {
    switch (metric) {
      case LatencyMetric::kPrefill:
        if (!row.stage.is_prefill()) continue;
        break;
      case LatencyMetric::kDecodePerToken:
        if (!row.stage.is_decode()) continue;
        break;
      case LatencyMetric::kTotal:
        if (row.name() != report.bottleneck) continue;
        break;
    }
    const double share = row.time * static_cast<double>(row.instances);
    if (share > best_time) {
      best_time = share;
      best = &row;
    }
  }
  return best ? best->bound : Bound::kMemory;
}

}  // namespace

std::string_view SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kBatch:
      return "batch";
    case SweepAxis::kPromptLen:
      return "prompt-len";
    case SweepAxis::kContextLen:
      return "context-len";
    case SweepAxis::kBandwidth:
      return "bandwidth";
  }
  return "?";
}

std::optional<SweepAxis> ParseSweepAxis(std::string_view name) {
  for (SweepAxis axis : {SweepAxis::kBatch, SweepAxis::kPromptLen,
                         SweepAxis::kContextLen, SweepAxis::kBandwidth}) {
    if (SweepAxisName(axis) == name) return axis;
  }
  return std::nullopt;
}

std::string_view LatencyMetricName(LatencyMetric metric) {
  switch (metric) {
    case LatencyMetric::kTotal:
      return "total";
    case LatencyMetric::kPrefill:
      return "prefill";
    case LatencyMetric::kDecodePerToken:
      return "decode";
  }
  return "?";
}

std::optional<LatencyMetric> ParseLatencyMetric(std::string_view name) {
  for (LatencyMetric metric : {LatencyMetric::kTotal, LatencyMetric::kPrefill,
                               LatencyMetric::kDecodePerToken}) {
    if (LatencyMetricName(metric) == name) return metric;
  }
  return std::nullopt;
}

DeploymentConfig VariantDelta::ApplyTo(DeploymentConfig base) const {
  if (w_bits) base.quant.w_bits = *w_bits;
  if (a_bits) base.quant.a_bits = *a_bits;
  if (kv_bits) base.quant.kv_bits = *kv_bits;
  if (fused_attention) base.fused_attention = *fused_attention;
  if (offload_link) {
    if (offload_link->empty()) {
      base.offload.reset();
    } else {
      base.offload = OffloadConfig{OffloadConfig::What::kWeights,
                                   *offload_link};
    }
  }
  if (active_layer_fraction) {
    base.active_layer_fraction = *active_layer_fraction;
  }
  return base;
}

VariantDelta ParseVariant(std::string_view text) {
  VariantDelta delta;
  const size_t colon = text.find(':');
  delta.name = std::string(text.substr(0, colon));
  if (delta.name.empty()) BadVariant(text, "missing variant name");
  if (colon == std::string_view::npos) return delta;

  std::string_view rest = text.substr(colon + 1);
  if (rest.empty()) BadVariant(text, "empty setting list");
  while (true) {
    const size_t comma = rest.find(',');
    const std::string_view token = rest.substr(0, comma);
    const size_t eq = token.find('=');
    if (token.empty()) BadVariant(text, "empty setting");
    if (eq == std::string_view::npos || eq == 0) {
      BadVariant(token, "expected key=value");
    }
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (key == "w") {
      delta.w_bits = ParseInt(token, value);
    } else if (key == "a") {
      delta.a_bits = ParseInt(token, value);
    } else if (key == "kv") {
      delta.kv_bits = ParseInt(token, value);
    } else if (key == "fa") {
      const int flag = ParseInt(token, value);
      if (flag != 0 && flag != 1) BadVariant(token, "fa must be 0 or 1");
      delta.fused_attention = flag == 1;
    } else if (key == "offload") {
      delta.offload_link = std::string(value);
    } else if (key == "lf") {
      delta.active_layer_fraction = ParseDouble(token, value);
    } else {
      BadVariant(token, "unknown key");
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return delta;
}

void SweepRequest::Validate() const {
  if (values.empty()) {
    throw RooflineError(ErrorCode::kInvalidArgument, "values",
                        "sweep needs at least one value");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0) || !std::isfinite(values[i])) {
      throw RooflineError(ErrorCode::kInvalidArgument, "values",
                          "sweep values must be positive");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw RooflineError(ErrorCode::kInvalidArgument, "values",
                          "sweep values must be strictly increasing");
    }
    if (axis != SweepAxis::kBandwidth) CountValue(axis, values[i]);
  }
}

SweepPointInputs SubstituteAxis(const SweepRequest& req,
                                const DeploymentConfig& variant_cfg,
                                double value) {
  SweepPointInputs inputs{req.hardware, variant_cfg};
  InferenceShape& shape = inputs.config.shape;
  switch (req.axis) {
    case SweepAxis::kBatch:
      shape.batch_size = CountValue(req.axis, value);
      break;
    case SweepAxis::kPromptLen:
      shape.prompt_len = CountValue(req.axis, value);
      break;
    case SweepAxis::kContextLen:
      // One decode step whose KV cache already holds `value` tokens.
      shape.prompt_len = CountValue(req.axis, value);
      shape.gen_len = 1;
      break;
    case SweepAxis::kBandwidth:
      inputs.hardware.bandwidth = value;
      break;
  }
  return inputs;
}

SeriesPoint SummarizePoint(double x, const NetworkReport& report,
                           LatencyMetric metric) {
  SeriesPoint point;
  point.x = x;
  switch (metric) {
    case LatencyMetric::kTotal:
      point.latency = report.total_latency;
      break;
    case LatencyMetric::kPrefill:
      point.latency = report.prefill_latency;
      break;
    case LatencyMetric::kDecodePerToken:
      point.latency = report.decode_latency_first.value_or(0.0);
      break;
  }
  point.throughput = report.throughput.value_or(0.0);
  point.memory = metric == LatencyMetric::kDecodePerToken && report.decode_memory
                     ? report.decode_memory->total
                     : report.memory.total;
  point.bound = DominantBound(report, metric);
  return point;
}

std::vector<Series> RunSweep(const SweepRequest& req) {
  req.Validate();
  std::vector<VariantDelta> variants = req.variants;
  if (variants.empty()) {
    VariantDelta base;
    base.name = "base";
    variants.push_back(std::move(base));
  }

  std::vector<Series> out(variants.size());
  std::vector<DeploymentConfig> configs;
  for (size_t v = 0; v < variants.size(); ++v) {
    out[v].name = variants[v].name;
    out[v].points.resize(req.values.size());
    configs.push_back(variants[v].ApplyTo(req.base));
  }

  const size_t total = variants.size() * req.values.size();
  std::atomic<size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr first_error;
  size_t first_error_index = total;

  auto worker = [&] {
    for (size_t task = next++; task < total; task = next++) {
      const size_t v = task / req.values.size();
      const size_t i = task % req.values.size();
      try {
        try {
          const SweepPointInputs inputs =
              SubstituteAxis(req, configs[v], req.values[i]);
          const NetworkReport report =
              AnalyzeNetwork(req.model, inputs.hardware, inputs.config);
          out[v].points[i] = SummarizePoint(req.values[i], report, req.metric);
        } catch (const RooflineError& e) {
          throw RooflineError(e.code(), e.field(),
                              "variant '" + variants[v].name + "': " +
                                  e.what());
        }
      } catch (...) {
        std::lock_guard lock(error_mu);
        // Report the error of the earliest failing point, independent of
        // scheduling.
        if (task < first_error_index) {
          first_error_index = task;
          first_error = std::current_exception();
        }
      }
    }
  };

  const size_t threads = std::min<size_t>(
      total, std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

std::string ExportSeries(const std::vector<Series>& series,
                         SeriesFormat format) {
  std::string out;
  if (format == SeriesFormat::kCsv) {
    out += kSeriesCsvHeader;
    out += '\n';
    for (const Series& s : series) {
      for (const SeriesPoint& p : s.points) {
        out += CsvField(s.name) + ',' + FullPrecision(p.x) + ',' +
               FullPrecision(p.latency) + ',' + FullPrecision(p.throughput) +
               ',' + FullPrecision(p.memory) + ',' +
               std::string(BoundName(p.bound)) + '\n';
      }
    }
    return out;
  }
  for (const Series& s : series) {
    for (const SeriesPoint& p : s.points) {
      nlohmann::ordered_json row;
      row["variant"] = s.name;
      row["x"] = p.x;
      row["latency_s"] = p.latency;
      row["throughput_tps"] = p.throughput;
      row["memory_bytes"] = p.memory;
      row["bound"] = BoundName(p.bound);
      out += row.dump() + '\n';
    }
  }
  return out;
}

std::vector<Series> ParseSeriesCsv(std::string_view csv) {
  std::vector<Series> series;
  size_t pos = 0;
  bool header = true;
  while (pos < csv.size()) {
    size_t end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    const std::string_view line = csv.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != kSeriesCsvHeader) {
        throw RooflineError(ErrorCode::kInvalidArgument, "header",
                            "unexpected CSV header");
      }
      header = false;
      continue;
    }
    const std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != 6) {
      throw RooflineError(ErrorCode::kInvalidArgument, "row",
                          "expected 6 CSV fields");
    }
    if (series.empty() || series.back().name != fields[0]) {
      series.push_back(Series{fields[0], {}});
    }
    SeriesPoint p;
    p.x = ParseDouble(fields[1], fields[1]);
    p.latency = ParseDouble(fields[2], fields[2]);
    p.throughput = ParseDouble(fields[3], fields[3]);
    p.memory = ParseDouble(fields[4], fields[4]);
    p.bound = fields[5] == "compute" ? Bound::kCompute : Bound::kMemory;
    series.back().points.push_back(p);
  }
  return series;
}

}  // namespace llm_roofline
