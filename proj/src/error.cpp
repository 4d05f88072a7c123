// Copyright 2026 The elicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "elicit/error.hpp"

namespace elicit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kMissingField: return "missing_field";
    case ErrorCode::kDuplicateId: return "duplicate_id";
    case ErrorCode::kInvalidScenario: return "invalid_scenario";
    case ErrorCode::kUnknownScenario: return "unknown_scenario";
    case ErrorCode::kUnknownSession: return "unknown_session";
    case ErrorCode::kWrongPhase: return "wrong_phase";
    case ErrorCode::kUnknownOption: return "unknown_option";
    case ErrorCode::kNonMonotonicTime: return "non_monotonic_time";
    case ErrorCode::kAlreadyAttempted: return "already_attempted";
    case ErrorCode::kQueueExhausted: return "queue_exhausted";
    case ErrorCode::kNoMatch: return "no_match";
    case ErrorCode::kMalformedLog: return "malformed_log";
    case ErrorCode::kCycle: return "cycle";
    case ErrorCode::kEmptySample: return "empty_sample";
    case ErrorCode::kZeroVariance: return "zero_variance";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kConflict: return "conflict";
  }
  return "unknown";
}

}  // namespace elicit
