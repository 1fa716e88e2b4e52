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

#include "llm_roofline/errors.hpp"

namespace llm_roofline {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingField:
      return "MissingField";
    case ErrorCode::kInvalidDimension:
      return "InvalidDimension";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kUnknownPreset:
      return "UnknownPreset";
    case ErrorCode::kUnsupportedDatatype:
      return "UnsupportedDatatype";
    case ErrorCode::kUnknownLink:
      return "UnknownLink";
  }
  return "Unknown";
}

}  // namespace llm_roofline
