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

#ifndef FRAGMARK_AUTHENTICATOR_HPP_
#define FRAGMARK_AUTHENTICATOR_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fragmark/config.hpp"
#include "fragmark/digest.hpp"
#include "fragmark/wav.hpp"

namespace fragmark {

inline constexpr double kEmbedBandHz = 300.0;
inline constexpr double kEmbedMidHz = 150.0;

// Where the 64 digest symbols live. Channel 0 carries the stream at
// primary_bins, channel 1 carries the same stream at secondary_bins.
struct EmbedLayout {
  std::size_t n_samples = 0;
  std::vector<std::size_t> primary_bins;
  std::vector<std::size_t> secondary_bins;
  std::size_t stride = 2;
  std::size_t base_bin = 1;
  std::size_t mid_bin = 0;
  double scale = kFloatScale;
  std::size_t band_limit_bin = 0;
};

// Throws kSignalTooShort when the embedding band holds fewer than 128 bins,
// kInvalidConfig when the requested placement leaves the band or overlaps.
EmbedLayout plan_layout(std::size_t n_samples, std::uint32_t sample_rate,
                        double scale);
EmbedLayout plan_layout(std::size_t n_samples, std::uint32_t sample_rate,
                        const Config& config);

// Disjoint transpositions above the audible band. Stage s swaps
// (n0 + o_s + 2jx, n0 + o_s + (2j+1)x) for j = 0 .. pair_counts[s] - 1.
struct SwapSchedule {
  std::size_t n_samples = 0;
  std::size_t origin_bin = 0;
  std::size_t half_wavelength = 10;
  std::vector<std::size_t> stage_offsets;
  std::vector<std::size_t> pair_counts;
  double tau = 0.0;

  std::vector<std::pair<std::size_t, std::size_t>> transpositions() const;
};

// Builds a schedule with the maximal pair count per stage that keeps every
// index below N/2. Throws kScheduleOverlap if a bin would be swapped twice.
SwapSchedule make_schedule(std::size_t n_samples, std::size_t origin_bin,
                           std::size_t half_wavelength,
                           std::vector<std::size_t> stage_offsets,
                           double tau = 0.0);

// Resolves origin_hz against the signal geometry. Throws kNyquistTooLow when
// the origin is not below Nyquist, kInvalidConfig when it would reach into
// the embedding band.
SwapSchedule plan_schedule(std::size_t n_samples, std::uint32_t sample_rate,
                           const SwapSettings& settings);

// Sets each channel's coded bins to the level of the corresponding symbol of
// md5(message). Works in double precision; no quantization.
SampledSignal embed_key(const SampledSignal& signal,
                        std::span<const std::uint8_t> message,
                        const EmbedLayout& layout);
SampledSignal embed_digest(const SampledSignal& signal, const Digest& digest,
                           const EmbedLayout& layout);

// Applies the schedule's transpositions to both channels. An involution.
SampledSignal seal(const SampledSignal& signal, const SwapSchedule& schedule);
SampledSignal unseal(const SampledSignal& signal,
                     const SwapSchedule& schedule);

// Raw coded-bin coefficients as read back from a signal.
struct CodedBins {
  std::vector<std::complex<double>> primary;    // channel 0
  std::vector<std::complex<double>> secondary;  // channel 1
};

CodedBins read_coded_bins(const SampledSignal& signal,
                          const EmbedLayout& layout);

struct ExtractedKey {
  std::string hex_primary;
  std::string hex_secondary;
  bool copies_agree = false;
};

ExtractedKey extract_key(const SampledSignal& signal,
                         const EmbedLayout& layout);

struct VerifyOptions {
  Mode mode = Mode::kFloat;
  double residual_limit = 2.0;
};

struct VerificationReport {
  std::string extracted_hex_primary;
  std::string extracted_hex_secondary;
  bool copies_agree = false;
  std::string expected_hex;
  // Every coded bin lies within A/2 of its level (complex distance) and, in
  // pcm16 mode, the coded-bin residual energy is within residual_limit.
  bool intact = false;
  bool match = false;
  double ber = 1.0;
  double max_bin_deviation = 0.0;
  std::optional<double> residual_ratio;  // pcm16 only
};

VerificationReport verify(const SampledSignal& signal,
                          std::span<const std::uint8_t> claimed_message,
                          const EmbedLayout& layout,
                          const VerifyOptions& options = {});

nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(const EmbedLayout& layout);
nlohmann::ordered_json to_json(const SwapSchedule& schedule);

// Mode-aware entry points used by the C API and the CLI. In pcm16 mode embed
// requantizes onto the 16-bit grid with noise shaping, and seal and unseal
// round to it. Float mode stays in double precision throughout; the float32
// writer shapes its own rounding.
SampledSignal embed(const SampledSignal& signal,
                    std::span<const std::uint8_t> message,
                    const Config& config);
SampledSignal seal(const SampledSignal& signal, const Config& config);
SampledSignal unseal(const SampledSignal& signal, const Config& config);
ExtractedKey extract_key(const SampledSignal& signal, const Config& config);
VerificationReport verify(const SampledSignal& signal,
                          std::span<const std::uint8_t> claimed_message,
                          const Config& config);

// Config with layout and schedule resolved for a concrete signal geometry.
nlohmann::ordered_json effective_config(const Config& config, std::size_t n_samples,
                                std::uint32_t sample_rate);

}  // namespace fragmark

#endif  // FRAGMARK_AUTHENTICATOR_HPP_
