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

#ifndef LLM_ROOFLINE_FORMAT_HPP_
#define LLM_ROOFLINE_FORMAT_HPP_

#include <string>

#include "llm_roofline/analyzer.hpp"

namespace llm_roofline {

// 1000-based K/M/G/T suffixes. Scaled values >= 10 print as integers,
// smaller ones with two significant figures ("69G", "1.3T", "8.4M").
std::string FormatSuffixed(double value);

// Intensity column: integers from 100 up, otherwise three significant
// figures ("1024", "114", "1.25", "0.992").
std::string FormatIntensity(double value);

// Seconds with an adaptive unit ("443 us", "17.6 ms").
std::string FormatDuration(double seconds);

// Per-op table (Layer Name, OPs, Memory Access, Arithmetic Intensity, Max
// Performance, Bound, Time) per stage, followed by a network summary.
std::string RenderTable(const NetworkReport& report);

}  // namespace llm_roofline

#endif  // LLM_ROOFLINE_FORMAT_HPP_
