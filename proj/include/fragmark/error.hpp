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

#ifndef FRAGMARK_ERROR_HPP_
#define FRAGMARK_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fragmark {

// Numeric values are part of the C ABI (see fragmark.h); do not renumber.
enum class ErrorCode : int {
  kMalformedContainer = 1,
  kUnsupportedFormat = 2,
  kTruncatedData = 3,
  kEmptyInput = 4,
  kNonHermitianInput = 5,
  kOutOfNyquistRange = 6,
  kWrongLength = 7,
  kSignalTooShort = 8,
  kNyquistTooLow = 9,
  kScheduleOverlap = 10,
  kLengthMismatch = 11,
  kDomainError = 12,
  kInvalidConfig = 13,
  kIo = 14,
  kInvalidArgument = 15,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fragmark

#endif  // FRAGMARK_ERROR_HPP_
