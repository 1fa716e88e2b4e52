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

#ifndef LLM_ROOFLINE_TOOLS_CLI_HPP_
#define LLM_ROOFLINE_TOOLS_CLI_HPP_

#include <iosfwd>

namespace llm_roofline::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadFlags = 2;
inline constexpr int kExitUnknownPreset = 3;

// Entry point for `llm-roofline {analyze,sweep,serve,presets}`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace llm_roofline::tools

#endif  // LLM_ROOFLINE_TOOLS_CLI_HPP_
