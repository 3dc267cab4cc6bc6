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

#include "fragmark/digest.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "fragmark/error.hpp"

namespace fragmark {
namespace {

constexpr std::array<std::uint32_t, 64> kSine = {
    0xd76aa478, 0xe8c7b756, 0x242070db, 0xc1bdceee, 0xf57c0faf, 0x4787c62a,
    0xa8304613, 0xfd469501, 0x698098d8, 0x8b44f7af, 0xffff5bb1, 0x895cd7be,
    0x6b901122, 0xfd987193, 0xa679438e, 0x49b40821, 0xf61e2562, 0xc040b340,
    0x265e5a51, 0xe9b6c7aa, 0xd62f105d, 0x02441453, 0xd8a1e681, 0xe7d3fbc8,
    0x21e1cde6, 0xc33707d6, 0xf4d50d87, 0x455a14ed, 0xa9e3e905, 0xfcefa3f8,
    0x676f02d9, 0x8d2a4c8a, 0xfffa3942, 0x8771f681, 0x6d9d6122, 0xfde5380c,
    0xa4beea44, 0x4bdecfa9, 0xf6bb4b60, 0xbebfbc70, 0x289b7ec6, 0xeaa127fa,
    0xd4ef3085, 0x04881d05, 0xd9d4d039, 0xe6db99e5, 0x1fa27cf8, 0xc4ac5665,
    0xf4292244, 0x432aff97, 0xab9423a7, 0xfc93a039, 0x655b59c3, 0x8f0ccc92,
    0xffeff47d, 0x85845dd1, 0x6fa87e4f, 0xfe2ce6e0, 0xa3014314, 0x4e0811a1,
    0xf7537e82, 0xbd3af235, 0x2ad7d2bb, 0xeb86d391};

constexpr std::array<int, 64> kShift = {
    7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22,
    5, 9,  14, 20, 5, 9,  14, 20, 5, 9,  14, 20, 5, 9,  14, 20,
    4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23,
    6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21};

void compress(std::array<std::uint32_t, 4>& state, const std::uint8_t* block) {
  std::array<std::uint32_t, 16> m{};
  for (int i = 0; i < 16; ++i) {
    m[i] = static_cast<std::uint32_t>(block[4 * i]) |
           (static_cast<std::uint32_t>(block[4 * i + 1]) << 8) |
           (static_cast<std::uint32_t>(block[4 * i + 2]) << 16) |
           (static_cast<std::uint32_t>(block[4 * i + 3]) << 24);
  }
  std::uint32_t a = state[0], b = state[1], c = state[2], d = state[3];
  for (int i = 0; i < 64; ++i) {
    std::uint32_t f;
    int g;
    if (i < 16) {
      f = (b & c) | (~b & d);
      g = i;
    } else if (i < 32) {
      f = (d & b) | (~d & c);
      g = (5 * i + 1) % 16;
    } else if (i < 48) {
      f = b ^ c ^ d;
      g = (3 * i + 5) % 16;
    } else {
      f = c ^ (b | ~d);
      g = (7 * i) % 16;
    }
    const std::uint32_t rotated =
        std::rotl(a + f + kSine[i] + m[g], kShift[i]);
    a = d;
    d = c;
    c = b;
    b += rotated;
  }
  state[0] += a;
  state[1] += b;
  state[2] += c;
  state[3] += d;
}

}  // namespace

Digest md5(std::span<const std::uint8_t> message) noexcept {
  std::array<std::uint32_t, 4> state = {0x67452301, 0xefcdab89, 0x98badcfe,
                                        0x10325476};
  const std::size_t full = message.size() / 64;
  for (std::size_t i = 0; i < full; ++i) compress(state, message.data() + 64 * i);

  // Tail: remaining bytes, 0x80, zero pad to 56 mod 64, bit length (LE).
  std::array<std::uint8_t, 128> tail{};
  const std::size_t rest = message.size() - 64 * full;
  for (std::size_t i = 0; i < rest; ++i) tail[i] = message[64 * full + i];
  tail[rest] = 0x80;
  const std::size_t tail_len = rest < 56 ? 64 : 128;
  const std::uint64_t bit_len = static_cast<std::uint64_t>(message.size()) * 8;
  for (int i = 0; i < 8; ++i) {
    tail[tail_len - 8 + i] = static_cast<std::uint8_t>(bit_len >> (8 * i));
  }
  compress(state, tail.data());
  if (tail_len == 128) compress(state, tail.data() + 64);

  Digest out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out[4 * i + j] = static_cast<std::uint8_t>(state[i] >> (8 * j));
    }
  }
  return out;
}

Digest md5(std::string_view message) noexcept { return md5(as_bytes(message)); }

std::string to_hex(const Digest& digest) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * digest.size());
  for (const std::uint8_t byte : digest) {
    hex.push_back(kDigits[byte >> 4]);
    hex.push_back(kDigits[byte & 0xF]);
  }
  return hex;
}

SymbolStream digest_to_pairs(std::span<const std::uint8_t> digest) {
  if (digest.size() != kDigestBytes) {
    throw Error(ErrorCode::kWrongLength,
                "digest must be 16 octets, got " + std::to_string(digest.size()));
  }
  SymbolStream pairs{};
  for (std::size_t i = 0; i < kDigestBytes; ++i) {
    const std::uint8_t b = digest[i];
    pairs[4 * i + 0] = static_cast<std::uint8_t>(b >> 6);
    pairs[4 * i + 1] = static_cast<std::uint8_t>((b >> 4) & 3);
    pairs[4 * i + 2] = static_cast<std::uint8_t>((b >> 2) & 3);
    pairs[4 * i + 3] = static_cast<std::uint8_t>(b & 3);
  }
  return pairs;
}

Digest pairs_to_digest(std::span<const std::uint8_t> pairs) {
  if (pairs.size() != kSymbolCount) {
    throw Error(ErrorCode::kWrongLength,
                "expected 64 symbols, got " + std::to_string(pairs.size()));
  }
  Digest digest{};
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (pairs[i] > 3) {
      throw Error(ErrorCode::kInvalidArgument, "symbol out of range");
    }
    digest[i / 4] = static_cast<std::uint8_t>(
        digest[i / 4] | (pairs[i] << (6 - 2 * (i % 4))));
  }
  return digest;
}

double pair_to_level(std::uint8_t pair, double scale) {
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "level scale must be positive");
  }
  if (pair > 3) throw Error(ErrorCode::kInvalidArgument, "symbol out of range");
  return static_cast<double>(pair) * scale;
}

std::uint8_t level_to_pair(double magnitude, double scale) {
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "level scale must be positive");
  }
  const double steps = std::round(magnitude / scale);
  if (!(steps > 0.0)) return 0;  // also catches NaN
  return steps >= 3.0 ? 3 : static_cast<std::uint8_t>(steps);
}

}  // namespace fragmark
