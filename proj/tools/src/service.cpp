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

#include "llm_roofline_tools/service.hpp"

#include <httplib.h>

#include "llm_roofline/analyzer.hpp"
#include "llm_roofline/errors.hpp"
#include "llm_roofline/serialize.hpp"
#include "llm_roofline/sweep.hpp"

namespace llm_roofline::tools {
namespace {

constexpr const char* kJson = "application/json";

ApiResponse ErrorResponse(int status, std::string_view error,
                          std::string_view field, std::string_view message) {
  Json body;
  body["error"] = error;
  body["field"] = field;
  body["message"] = message;
  return {status, CanonicalDump(body)};
}

template <typename Handler>
ApiResponse Guarded(std::string_view raw, Handler handler) {
  const nlohmann::json body = nlohmann::json::parse(raw, nullptr, false);
  if (body.is_discarded()) {
    return ErrorResponse(400, "InvalidJson", "body",
                         "request body is not valid JSON");
  }
  try {
    return {200, handler(body)};
  } catch (const RooflineError& e) {
    const int status = e.code() == ErrorCode::kUnknownPreset ? 422 : 400;
    return ErrorResponse(status, ErrorCodeName(e.code()), e.field(), e.what());
  }
}

}  // namespace

ApiResponse Service::Presets() const {
  Json body;
  body["models"] = presets_.ModelNames();
  body["hardware"] = presets_.HardwareNames();
  return {200, CanonicalDump(body)};
}

ApiResponse Service::Analyze(std::string_view raw) const {
  return Guarded(raw, [&](const nlohmann::json& body) {
    const AnalyzeRequest req = ParseAnalyzeRequest(body, presets_);
    return CanonicalDump(
        ToJson(AnalyzeNetwork(req.model, req.hardware, req.config)));
  });
}

ApiResponse Service::Sweep(std::string_view raw) const {
  return Guarded(raw, [&](const nlohmann::json& body) {
    return CanonicalDump(ToJson(RunSweep(ParseSweepRequest(body, presets_))));
  });
}

void RegisterRoutes(httplib::Server& server, const Service& service,
                    const std::optional<std::filesystem::path>& static_dir) {
  auto reply = [](httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body, kJson);
  };
  server.Get("/api/presets",
             [&service, reply](const httplib::Request&,
                               httplib::Response& res) {
               reply(res, service.Presets());
             });
  server.Post("/api/analyze",
              [&service, reply](const httplib::Request& req,
                                httplib::Response& res) {
                reply(res, service.Analyze(req.body));
              });
  server.Post("/api/sweep",
              [&service, reply](const httplib::Request& req,
                                httplib::Response& res) {
                reply(res, service.Sweep(req.body));
              });
  if (static_dir) server.set_mount_point("/", static_dir->string());

  server.set_error_handler([](const httplib::Request& req,
                              httplib::Response& res) {
    if (res.status == 404 && req.path.rfind("/api/", 0) == 0) {
      res.set_content(CanonicalDump(Json{{"error", "NotFound"},
                                         {"field", req.path}}),
                      kJson);
    }
  });
}

bool Serve(const std::string& host, int port,
           const std::optional<std::filesystem::path>& static_dir,
           const PresetRegistry& presets) {
  httplib::Server server;
  Service service(presets);
  RegisterRoutes(server, service, static_dir);
  return server.listen(host, port);
}

}  // namespace llm_roofline::tools
