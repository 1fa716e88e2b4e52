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

#ifndef LLM_ROOFLINE_TOOLS_SERVICE_HPP_
#define LLM_ROOFLINE_TOOLS_SERVICE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "llm_roofline/presets.hpp"

namespace httplib {
class Server;
}

namespace llm_roofline::tools {

struct ApiResponse {
  int status = 200;
  std::string body;
};

// Request handlers, independent of the transport. Stateless apart from the
// immutable preset registry.
class Service {
 public:
  explicit Service(const PresetRegistry& presets) : presets_(presets) {}

  ApiResponse Presets() const;
  ApiResponse Analyze(std::string_view body) const;
  ApiResponse Sweep(std::string_view body) const;

 private:
  const PresetRegistry& presets_;
};

// Mounts /api/presets, /api/analyze, /api/sweep and, when given, the viewer
// bundle at "/".
void RegisterRoutes(httplib::Server& server, const Service& service,
                    const std::optional<std::filesystem::path>& static_dir);

// Blocks until the server stops. Returns false if the port cannot be bound.
bool Serve(const std::string& host, int port,
           const std::optional<std::filesystem::path>& static_dir,
           const PresetRegistry& presets);

}  // namespace llm_roofline::tools

#endif  // LLM_ROOFLINE_TOOLS_SERVICE_HPP_
