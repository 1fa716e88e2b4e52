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

#include "llm_roofline/presets.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "llm_roofline/errors.hpp"

namespace llm_roofline {
namespace {

namespace fs = std::filesystem;

nlohmann::json ReadDocument(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded()) {
    throw RooflineError(ErrorCode::kInvalidArgument, path.string(),
                        "preset " + path.string() + " is not valid JSON");
  }
  return doc;
}

template <typename T, typename Loader>
void LoadDirectory(const fs::path& dir, std::map<std::string, T, std::less<>>& out,
                   Loader load) {
  if (!fs::is_directory(dir)) return;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") {
      continue;
    }
    const std::string stem = entry.path().stem().string();
    out.emplace(stem, load(ReadDocument(entry.path()), stem));
  }
}

template <typename T>
std::vector<std::string> Keys(const std::map<std::string, T, std::less<>>& m) {
  std::vector<std::string> keys;
  keys.reserve(m.size());
  for (const auto& [key, value] : m) keys.push_back(key);
  return keys;
}

template <typename T>
const T& Lookup(const std::map<std::string, T, std::less<>>& m,
                std::string_view name, std::string_view kind) {
  auto it = m.find(name);
  if (it != m.end()) return it->second;
  std::string known;
  for (const auto& key : Keys(m)) known += known.empty() ? key : ", " + key;
  throw RooflineError(ErrorCode::kUnknownPreset, std::string(kind),
                      "unknown " + std::string(kind) + " preset '" +
                          std::string(name) + "' (known: " + known + ")");
}

}  // namespace

fs::path DefaultPresetDir() {
  if (const char* env = std::getenv(kPresetDirEnv); env && *env) {
    return fs::path(env);
  }
#ifdef LLM_ROOFLINE_SOURCE_PRESET_DIR
  if (fs::is_directory(LLM_ROOFLINE_SOURCE_PRESET_DIR)) {
    return fs::path(LLM_ROOFLINE_SOURCE_PRESET_DIR);
  }
#endif
#ifdef LLM_ROOFLINE_INSTALL_PRESET_DIR
  return fs::path(LLM_ROOFLINE_INSTALL_PRESET_DIR);
#else
  return fs::path("presets");
#endif
}

PresetRegistry::PresetRegistry(const fs::path& dir) {
  LoadDirectory(dir / "models", models_,
                [](const nlohmann::json& doc, const std::string& stem) {
                  ModelConfig cfg = LoadModelConfig(doc, stem);
                  cfg.name = stem;
                  return cfg;
                });
  LoadDirectory(dir / "hardware", hardware_,
                [](const nlohmann::json& doc, const std::string& stem) {
                  HardwareSpec hw = LoadHardwareSpec(doc, stem);
                  hw.name = stem;
                  return hw;
                });
}

const PresetRegistry& PresetRegistry::Default() {
  static const PresetRegistry registry(DefaultPresetDir());
  return registry;
}

const ModelConfig& PresetRegistry::Model(std::string_view name) const {
  return Lookup(models_, name, "model");
}

const HardwareSpec& PresetRegistry::Hardware(std::string_view name) const {
  return Lookup(hardware_, name, "hardware");
}

std::vector<std::string> PresetRegistry::ModelNames() const {
  return Keys(models_);
}

std::vector<std::string> PresetRegistry::HardwareNames() const {
  return Keys(hardware_);
}

ModelConfig PresetModel(std::string_view name) {
  return PresetRegistry::Default().Model(name);
}

HardwareSpec PresetHardware(std::string_view name) {
  return PresetRegistry::Default().Hardware(name);
}

}  // namespace llm_roofline
