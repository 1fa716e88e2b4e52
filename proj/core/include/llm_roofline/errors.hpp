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

#ifndef LLM_ROOFLINE_ERRORS_HPP_
#define LLM_ROOFLINE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace llm_roofline {

enum class ErrorCode {
  kMissingField,
  kInvalidDimension,
  kInvalidArgument,
  kUnknownPreset,
  kUnsupportedDatatype,
  kUnknownLink,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries a machine-readable code and,
// where one applies, the name of the offending input key.
class RooflineError : public std::runtime_error {
 public:
  RooflineError(ErrorCode code, std::string field, const std::string& message)
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const { return code_; }
  const std::string& field() const { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace llm_roofline

#endif  // LLM_ROOFLINE_ERRORS_HPP_
