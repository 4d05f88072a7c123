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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elicit {

// Machine-readable failure categories shared by every module. The C API maps
// these one-to-one onto elicit_status values.
enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kMissingField,
  kDuplicateId,
  kInvalidScenario,
  kUnknownScenario,
  kUnknownSession,
  kWrongPhase,
  kUnknownOption,
  kNonMonotonicTime,
  kAlreadyAttempted,
  kQueueExhausted,
  kNoMatch,
  kMalformedLog,
  kCycle,
  kEmptySample,
  kZeroVariance,
  kIo,
  kConflict,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorCode::kParse, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace elicit
