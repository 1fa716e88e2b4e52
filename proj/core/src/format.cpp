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

#include "llm_roofline/format.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace llm_roofline {
namespace {

std::string Printf(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

std::string Pad(const std::string& text, size_t width) {
  return text.size() >= width ? text : text + std::string(width - text.size(), ' ');
}

}  // namespace

std::string FormatSuffixed(double value) {
  static constexpr const char* kSuffixes[] = {"", "K", "M", "G", "T", "P", "E"};
  if (value == 0 || !std::isfinite(value)) return Printf("%.0f", value);
  double scaled = value;
  size_t unit = 0;
  while (std::fabs(scaled) >= 1000.0 && unit + 1 < std::size(kSuffixes)) {
    scaled /= 1000.0;
    ++unit;
  }
  const std::string digits =
      std::fabs(scaled) >= 10.0 ? Printf("%.0f", scaled) : Printf("%.2g", scaled);
  return digits + kSuffixes[unit];
}

std::string FormatIntensity(double value) {
  return value >= 100.0 ? Printf("%.0f", value) : Printf("%.3g", value);
}

std::string FormatDuration(double seconds) {
  if (seconds == 0) return "0 s";
  if (seconds >= 1.0) return Printf("%.3g s", seconds);
  if (seconds >= 1e-3) return Printf("%.3g ms", seconds * 1e3);
  if (seconds >= 1e-6) return Printf("%.3g us", seconds * 1e6);
  return Printf("%.3g ns", seconds * 1e9);
}

std::string RenderTable(const NetworkReport& report) {
  static constexpr const char* kHeaders[] = {
      "Layer Name", "OPs",   "Memory Access", "Arithmetic Intensity",
      "Max Performance", "Bound", "Time"};
  constexpr size_t kColumns = std::size(kHeaders);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<size_t, std::string>> sections;  // row index, title
  const Stage* current = nullptr;
  for (const LayerReport& row : report.per_op) {
    if (current == nullptr || current->kind != row.stage.kind) {
      current = &row.stage;
      std::string title = row.stage.is_prefill()
                              ? "Prefill"
                              : "Decode (context " +
                                    std::to_string(row.stage.context_len) + ")";
      sections.emplace_back(rows.size(), std::move(title));
    }
    rows.push_back({std::string(row.name()), FormatSuffixed(row.ops),
                    FormatSuffixed(row.total_bytes),
                    FormatIntensity(row.arithmetic_intensity),
                    FormatSuffixed(row.attainable),
                    std::string(BoundName(row.bound)),
                    FormatDuration(row.time)});
  }

  size_t widths[kColumns];
  for (size_t c = 0; c < kColumns; ++c) {
    widths[c] = std::string(kHeaders[c]).size();
    for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (size_t c = 0; c < kColumns; ++c) {
      out += c + 1 == kColumns ? cells[c] : Pad(cells[c], widths[c] + 2);
    }
    return out + "\n";
  };

  std::ostringstream out;
  out << line({std::begin(kHeaders), std::end(kHeaders)});
  size_t next_section = 0;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (next_section < sections.size() && sections[next_section].first == r) {
      out << "-- " << sections[next_section].second << " --\n";
      ++next_section;
    }
    out << line(rows[r]);
  }

  out << "\nNetwork summary: " << report.model << " on " << report.hardware
      << "\n";
  out << "  prefill latency       " << FormatDuration(report.prefill_latency)
      << "\n";
  if (report.decode_latency_first) {
    out << "  decode latency first  "
        << FormatDuration(*report.decode_latency_first) << "\n";
    out << "  decode latency last   "
        << FormatDuration(*report.decode_latency_last) << "\n";
  }
  out << "  total latency         " << FormatDuration(report.total_latency)
      << "\n";
  if (report.throughput) {
    out << "  throughput            " << Printf("%.4g", *report.throughput)
        << " tokens/s\n";
  }
  out << "  memory                weights " << FormatSuffixed(report.memory.weights)
      << "B, kv cache " << FormatSuffixed(report.memory.kv_cache)
      << "B, activations " << FormatSuffixed(report.memory.activations_peak)
      << "B, total " << FormatSuffixed(report.memory.total) << "B"
      << (report.capacity_exceeded ? " (exceeds device capacity)" : "")
      << "\n";
  out << "  bottleneck            " << report.bottleneck << "\n";
  return out.str();
}

}  // namespace llm_roofline
