// Copyright 2026 The ACT-Bench Tools Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "actbench/error.hpp"

namespace actbench {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kInsufficientPoints: return "insufficient-points";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kFrame: return "frame";
    case ErrorCode::kAlignment: return "alignment";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kCoverage: return "coverage";
    case ErrorCode::kIntegrity: return "integrity";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kStructure: return "structure";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace actbench
