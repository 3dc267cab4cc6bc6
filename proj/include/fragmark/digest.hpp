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

#ifndef FRAGMARK_DIGEST_HPP_
#define FRAGMARK_DIGEST_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace fragmark {

inline constexpr std::size_t kDigestBytes = 16;
inline constexpr std::size_t kSymbolCount = 64;  // two-bit symbols per digest

using Digest = std::array<std::uint8_t, kDigestBytes>;
using SymbolStream = std::array<std::uint8_t, kSymbolCount>;

// RFC 1321. MD5 is collision-broken; it is used here as a fixed-size
// fingerprint, not as a security primitive.
Digest md5(std::span<const std::uint8_t> message) noexcept;
Digest md5(std::string_view message) noexcept;

std::string to_hex(const Digest& digest);

inline std::span<const std::uint8_t> as_bytes(std::string_view text) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

// MSB-first: byte b becomes (b >> 6, (b >> 4) & 3, (b >> 2) & 3, b & 3).
// Throws kWrongLength unless exactly 16 octets are given.
SymbolStream digest_to_pairs(std::span<const std::uint8_t> digest);
// Inverse of digest_to_pairs. Throws kWrongLength / kInvalidArgument.
Digest pairs_to_digest(std::span<const std::uint8_t> pairs);

// Level alphabet {0, A, 2A, 3A}.
double pair_to_level(std::uint8_t pair, double scale);
// Nearest level, clamped to the alphabet.
std::uint8_t level_to_pair(double magnitude, double scale);

}  // namespace fragmark

#endif  // FRAGMARK_DIGEST_HPP_
