// Copyright 2026 The fragmark Authors.
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

#include "fragmark/error.hpp"

namespace fragmark {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kMalformedContainer: return "MalformedContainer";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kTruncatedData: return "TruncatedData";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNonHermitianInput: return "NonHermitianInput";
    case ErrorCode::kOutOfNyquistRange: return "OutOfNyquistRange";
    case ErrorCode::kWrongLength: return "WrongLength";
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kNyquistTooLow: return "NyquistTooLow";
    case ErrorCode::kScheduleOverlap: return "ScheduleOverlap";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace fragmark
