// Copyright 2026 The AIFV Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aifv {

enum class ErrorCode {
  kEmptyAlphabet,
  kLengthMismatch,
  kNonUnitSum,
  kNonPositiveProbability,
  kParse,
  kInvalidTree,
  kAlphabetMismatch,
  kUnknownSymbol,
  kCorruptStream,
  kTruncatedStream,
  kDepthTooSmall,
  kBadArity,
  kCapExceeded,
  kTimeLimitExceeded,
  kDegenerateChain,
  kReducibleChain,
  kMaxIterExceeded,
  kUnconstructible,
  kDepthSaturated,
  kInfeasible,
  kInvalidPrefix,
  kSymbolOutOfRange,
  kBadMagic,
  kVersionMismatch,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyAlphabet: return "EmptyAlphabet";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNonUnitSum: return "NonUnitSum";
    case ErrorCode::kNonPositiveProbability: return "NonPositiveProbability";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidTree: return "InvalidTree";
    case ErrorCode::kAlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::kUnknownSymbol: return "UnknownSymbol";
    case ErrorCode::kCorruptStream: return "CorruptStream";
    case ErrorCode::kTruncatedStream: return "TruncatedStream";
    case ErrorCode::kDepthTooSmall: return "DepthTooSmall";
    case ErrorCode::kBadArity: return "BadArity";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kTimeLimitExceeded: return "TimeLimitExceeded";
    case ErrorCode::kDegenerateChain: return "DegenerateChain";
    case ErrorCode::kReducibleChain: return "ReducibleChain";
    case ErrorCode::kMaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::kUnconstructible: return "Unconstructible";
    case ErrorCode::kDepthSaturated: return "DepthSaturated";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kInvalidPrefix: return "InvalidPrefix";
    case ErrorCode::kSymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
  }
  return "Unknown";
}

// All library failures are reported through this exception type; the code
// lets callers (and the CLI's exit-code mapping) branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace aifv
