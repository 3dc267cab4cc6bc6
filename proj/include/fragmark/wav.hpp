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

#ifndef FRAGMARK_WAV_HPP_
#define FRAGMARK_WAV_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace fragmark {

enum class SampleFormat { kPcm16, kFloat32 };

// A RIFF sub-chunk this codec does not interpret. Kept verbatim so that
// rewriting an existing file does not lose metadata (LIST, bext, ...).
struct RawChunk {
  std::array<char, 4> id{};
  std::vector<std::uint8_t> payload;

  bool operator==(const RawChunk&) const = default;
};

// Two-channel time-domain signal with amplitudes nominally in [-1, 1).
struct SampledSignal {
  std::array<std::vector<double>, 2> channels;
  std::uint32_t sample_rate = 44100;
  SampleFormat source_format = SampleFormat::kFloat32;
  std::vector<RawChunk> leading_chunks;   // unknown chunks seen before data
  std::vector<RawChunk> trailing_chunks;  // unknown chunks seen after data

  std::size_t frames() const noexcept { return channels[0].size(); }

  // Same metadata and sample rate, samples replaced.
  SampledSignal with_channels(std::vector<double> left,
                              std::vector<double> right) const;
};

// Throws kInvalidArgument when the channel lengths differ or the rate is 0.
void validate(const SampledSignal& signal);

SampledSignal read_wav(std::span<const std::uint8_t> bytes);
// Float32 output goes through quantize_float32_shaped, so values already on
// the float32 grid are written unchanged.
std::vector<std::uint8_t> write_wav(const SampledSignal& signal,
                                    SampleFormat format);

SampledSignal read_wav_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_wav_file(const SampledSignal& signal, SampleFormat format,
                    const std::filesystem::path& path);

// Clamp to [-1, 1 - 2^-15], scale by 32768, round half away from zero.
std::int16_t to_pcm16(double amplitude) noexcept;
inline double from_pcm16(std::int16_t value) noexcept {
  return static_cast<double>(value) / 32768.0;
}

}  // namespace fragmark

#endif  // FRAGMARK_WAV_HPP_
