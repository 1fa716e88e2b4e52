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

#ifndef LLM_ROOFLINE_PRESETS_HPP_
#define LLM_ROOFLINE_PRESETS_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "llm_roofline/hardware.hpp"
#include "llm_roofline/model.hpp"

namespace llm_roofline {

inline constexpr const char* kPresetDirEnv = "LLM_ROOFLINE_PRESET_DIR";

// Resolution order: $LLM_ROOFLINE_PRESET_DIR, the source-tree data directory,
// then the installed data directory.
std::filesystem::path DefaultPresetDir();

// Immutable after construction. Loads <dir>/models/*.json and
// <dir>/hardware/*.json; the preset name is the file stem.
class PresetRegistry {
 public:
  explicit PresetRegistry(const std::filesystem::path& dir);

  // Shared registry over DefaultPresetDir(), loaded on first use.
  static const PresetRegistry& Default();

  // Throw RooflineError(kUnknownPreset) listing the known names.
  const ModelConfig& Model(std::string_view name) const;
  const HardwareSpec& Hardware(std::string_view name) const;

  std::vector<std::string> ModelNames() const;
  std::vector<std::string> HardwareNames() const;

 private:
  std::map<std::string, ModelConfig, std::less<>> models_;
  std::map<std::string, HardwareSpec, std::less<>> hardware_;
};

ModelConfig PresetModel(std::string_view name);
HardwareSpec PresetHardware(std::string_view name);

}  // namespace llm_roofline

#endif  // LLM_ROOFLINE_PRESETS_HPP_
