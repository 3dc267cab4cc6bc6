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

#include "fragmark/authenticator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "fragmark/error.hpp"
#include "fragmark/metrics.hpp"
#include "fragmark/quantize.hpp"
#include "fragmark/spectral.hpp"

namespace fragmark {
namespace {

using spectral::Complex;
using Json = nlohmann::ordered_json;

void require_geometry(const SampledSignal& signal, std::size_t planned_for,
                      const char* what) {
  validate(signal);
  if (signal.frames() != planned_for) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " planned for " + std::to_string(planned_for) +
                    " frames, signal has " + std::to_string(signal.frames()));
  }
}

const std::vector<std::size_t>& bins_for_channel(const EmbedLayout& layout,
                                                 std::size_t channel) {
  return channel == 0 ? layout.primary_bins : layout.secondary_bins;
}

// Expected energy of one plain 16-bit rounding pass in a single bin.
double pcm16_bin_noise_energy(std::size_t n_samples) {
  return static_cast<double>(n_samples) * kPcm16Step * kPcm16Step / 12.0;
}

}  // namespace

EmbedLayout plan_layout(std::size_t n_samples, std::uint32_t sample_rate,
                        double scale) {
  Config config;
  config.scale = scale;
  return plan_layout(n_samples, sample_rate, config);
}

EmbedLayout plan_layout(std::size_t n_samples, std::uint32_t sample_rate,
                        const Config& config) {
  if (!(config.scale > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "layout: scale must be positive");
  }
  if (config.stride == 0 || config.base_bin == 0) {
    throw Error(ErrorCode::kInvalidConfig, "layout: stride and base_bin must be >= 1");
  }
  EmbedLayout layout;
  layout.n_samples = n_samples;
  layout.scale = config.scale;
  layout.stride = config.stride;
  layout.base_bin = config.base_bin;
  layout.band_limit_bin = spectral::bin_for_hz(kEmbedBandHz, sample_rate, n_samples);
  if (layout.band_limit_bin < 2 * kSymbolCount) {
    throw Error(ErrorCode::kSignalTooShort,
                "layout: only " + std::to_string(layout.band_limit_bin) +
                    " bins below 300 Hz, need 128");
  }
  layout.mid_bin = config.mid_bin.value_or(
      spectral::bin_for_hz(kEmbedMidHz, sample_rate, n_samples));

  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    layout.primary_bins.push_back(layout.base_bin + i * layout.stride);
    layout.secondary_bins.push_back(layout.mid_bin + i * layout.stride);
  }
  const std::size_t last =
      std::max(layout.primary_bins.back(), layout.secondary_bins.back());
  if (last > layout.band_limit_bin) {
    throw Error(ErrorCode::kSignalTooShort,
                "layout: bin " + std::to_string(last) + " exceeds the 300 Hz bin " +
                    std::to_string(layout.band_limit_bin));
  }
  const std::unordered_set<std::size_t> primary(layout.primary_bins.begin(),
                                                layout.primary_bins.end());
  for (const std::size_t k : layout.secondary_bins) {
    if (primary.count(k)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "layout: primary and secondary bins overlap at " + std::to_string(k));
    }
  }
  return layout;
}

std::vector<std::pair<std::size_t, std::size_t>> SwapSchedule::transpositions()
    const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t s = 0; s < stage_offsets.size(); ++s) {
    const std::size_t start = origin_bin + stage_offsets[s];
    for (std::size_t j = 0; j < pair_counts[s]; ++j) {
      pairs.emplace_back(start + 2 * j * half_wavelength,
                         start + (2 * j + 1) * half_wavelength);
    }
  }
  return pairs;
}

SwapSchedule make_schedule(std::size_t n_samples, std::size_t origin_bin,
                           std::size_t half_wavelength,
                           std::vector<std::size_t> stage_offsets, double tau) {
  if (half_wavelength == 0 || origin_bin == 0 || stage_offsets.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "schedule: origin and half wavelength must be >= 1, "
                "at least one stage");
  }
  if (2 * origin_bin >= n_samples) {
    throw Error(ErrorCode::kNyquistTooLow,
                "schedule: origin bin " + std::to_string(origin_bin) +
                    " is not below N/2");
  }
  SwapSchedule schedule;
  schedule.n_samples = n_samples;
  schedule.origin_bin = origin_bin;
  schedule.half_wavelength = half_wavelength;
  schedule.stage_offsets = std::move(stage_offsets);
  schedule.tau = tau;

  const std::size_t last_bin = (n_samples - 1) / 2;  // largest k with 2k < N
  for (const std::size_t offset : schedule.stage_offsets) {
    const std::size_t start = origin_bin + offset;
    std::size_t count = 0;
    if (start + half_wavelength <= last_bin) {
      count = (last_bin - start - half_wavelength) / (2 * half_wavelength) + 1;
    }
    schedule.pair_counts.push_back(count);
  }

  std::vector<bool> used(last_bin + 1, false);
  for (const auto& [a, b] : schedule.transpositions()) {
    for (const std::size_t k : {a, b}) {
      if (used[k]) {
        throw Error(ErrorCode::kScheduleOverlap,
                    "schedule: bin " + std::to_string(k) +
                        " takes part in two swaps");
      }
      used[k] = true;
    }
  }
  return schedule;
}

SwapSchedule plan_schedule(std::size_t n_samples, std::uint32_t sample_rate,
                           const SwapSettings& settings) {
  if (settings.origin_hz > static_cast<double>(sample_rate) / 2.0) {
    throw Error(ErrorCode::kNyquistTooLow,
                "schedule: Nyquist " + std::to_string(sample_rate / 2) +
                    " Hz is below the swap origin");
  }
  const std::size_t origin =
      spectral::bin_for_hz(settings.origin_hz, sample_rate, n_samples);
  if (2 * origin >= n_samples) {
    throw Error(ErrorCode::kNyquistTooLow, "schedule: origin bin at Nyquist");
  }
  if (static_cast<double>(sample_rate) / 2.0 >= kEmbedBandHz &&
      origin <= spectral::bin_for_hz(kEmbedBandHz, sample_rate, n_samples)) {
    throw Error(ErrorCode::kInvalidConfig,
                "schedule: origin reaches into the embedding band");
  }
  return make_schedule(n_samples, origin, settings.half_wavelength,
                       settings.stage_offsets, settings.tau);
}

SampledSignal embed_key(const SampledSignal& signal,
                        std::span<const std::uint8_t> message,
                        const EmbedLayout& layout) {
  return embed_digest(signal, md5(message), layout);
}

SampledSignal embed_digest(const SampledSignal& signal, const Digest& digest,
                           const EmbedLayout& layout) {
  require_geometry(signal, layout.n_samples, "layout");
  const SymbolStream symbols = digest_to_pairs(digest);
  const spectral::FftPlan plan(signal.frames());

  std::array<std::vector<double>, 2> out;
  for (std::size_t c = 0; c < 2; ++c) {
    std::vector<Complex> bins = spectral::forward(signal.channels[c], plan);
    const auto& targets = bins_for_channel(layout, c);
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      bins[targets[i]] = {pair_to_level(symbols[i], layout.scale), 0.0};
    }
    spectral::enforce_hermitian(bins, targets);
    out[c] = spectral::inverse(bins, plan);
  }
  return signal.with_channels(std::move(out[0]), std::move(out[1]));
}

SampledSignal seal(const SampledSignal& signal, const SwapSchedule& schedule) {
  require_geometry(signal, schedule.n_samples, "schedule");
  const auto swaps = schedule.transpositions();
  std::vector<std::size_t> touched;
  touched.reserve(2 * swaps.size());
  for (const auto& [a, b] : swaps) {
    touched.push_back(a);
    touched.push_back(b);
  }

  const spectral::FftPlan plan(signal.frames());
  std::array<std::vector<double>, 2> out;
  for (std::size_t c = 0; c < 2; ++c) {
    std::vector<Complex> bins = spectral::forward(signal.channels[c], plan);
    for (const auto& [a, b] : swaps) std::swap(bins[a], bins[b]);
    spectral::enforce_hermitian(bins, touched);
    out[c] = spectral::inverse(bins, plan);
  }
  return signal.with_channels(std::move(out[0]), std::move(out[1]));
}

SampledSignal unseal(const SampledSignal& signal,
                     const SwapSchedule& schedule) {
  return seal(signal, schedule);
}

CodedBins read_coded_bins(const SampledSignal& signal,
                          const EmbedLayout& layout) {
  require_geometry(signal, layout.n_samples, "layout");
  const spectral::FftPlan plan(signal.frames());
  CodedBins coded;
  for (std::size_t c = 0; c < 2; ++c) {
    const std::vector<Complex> bins = spectral::forward(signal.channels[c], plan);
    auto& dest = c == 0 ? coded.primary : coded.secondary;
    for (const std::size_t k : bins_for_channel(layout, c)) dest.push_back(bins[k]);
  }
  return coded;
}

namespace {

SymbolStream decode(const std::vector<Complex>& bins, double scale) {
  SymbolStream symbols{};
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    symbols[i] = level_to_pair(bins[i].real(), scale);
  }
  return symbols;
}

ExtractedKey key_from(const CodedBins& coded, double scale) {
  ExtractedKey key;
  key.hex_primary = to_hex(pairs_to_digest(decode(coded.primary, scale)));
  key.hex_secondary = to_hex(pairs_to_digest(decode(coded.secondary, scale)));
  key.copies_agree = key.hex_primary == key.hex_secondary;
  return key;
}

}  // namespace

ExtractedKey extract_key(const SampledSignal& signal, const EmbedLayout& layout) {
  return key_from(read_coded_bins(signal, layout), layout.scale);
}

VerificationReport verify(const SampledSignal& signal,
                          std::span<const std::uint8_t> claimed_message,
                          const EmbedLayout& layout,
                          const VerifyOptions& options) {
  const CodedBins coded = read_coded_bins(signal, layout);
  const Digest expected = md5(claimed_message);
  const SymbolStream primary_symbols = decode(coded.primary, layout.scale);

  VerificationReport report;
  const ExtractedKey key = key_from(coded, layout.scale);
  report.extracted_hex_primary = key.hex_primary;
  report.extracted_hex_secondary = key.hex_secondary;
  report.copies_agree = key.copies_agree;
  report.expected_hex = to_hex(expected);
  report.ber = ber(expected, pairs_to_digest(primary_symbols));

  // Distance of every coded bin from the level it decodes to.
  double worst_ratio = 0.0;
  for (const auto* bins : {&coded.primary, &coded.secondary}) {
    const SymbolStream symbols = decode(*bins, layout.scale);
    double energy = 0.0;
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      const Complex level{pair_to_level(symbols[i], layout.scale), 0.0};
      const double dev = std::abs((*bins)[i] - level);
      report.max_bin_deviation = std::max(report.max_bin_deviation, dev);
      energy += dev * dev;
    }
    worst_ratio = std::max(
        worst_ratio, energy / (static_cast<double>(kSymbolCount) *
                               pcm16_bin_noise_energy(layout.n_samples)));
  }

  report.intact = report.max_bin_deviation < layout.scale / 2.0;
  if (options.mode == Mode::kPcm16) {
    report.residual_ratio = worst_ratio;
    report.intact = report.intact && worst_ratio <= options.residual_limit;
  }
  report.match = report.extracted_hex_primary == report.expected_hex &&
                 report.copies_agree && report.intact;
  return report;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  Json j;
  j["expected_hex"] = r.expected_hex;
  j["extracted_hex_primary"] = r.extracted_hex_primary;
  j["extracted_hex_secondary"] = r.extracted_hex_secondary;
  j["copies_agree"] = r.copies_agree;
  j["intact"] = r.intact;
  j["match"] = r.match;
  j["ber"] = r.ber;
  j["max_bin_deviation"] = r.max_bin_deviation;
  j["residual_ratio"] = r.residual_ratio ? Json(*r.residual_ratio) : Json(nullptr);
  return j;
}

nlohmann::ordered_json to_json(const EmbedLayout& l) {
  Json j;
  j["n_samples"] = l.n_samples;
  j["band_limit_bin"] = l.band_limit_bin;
  j["base_bin"] = l.base_bin;
  j["mid_bin"] = l.mid_bin;
  j["stride"] = l.stride;
  j["scale"] = l.scale;
  j["primary_bins"] = l.primary_bins;
  j["secondary_bins"] = l.secondary_bins;
  return j;
}

nlohmann::ordered_json to_json(const SwapSchedule& s) {
  Json j;
  j["n_samples"] = s.n_samples;
  j["origin_bin"] = s.origin_bin;
  j["half_wavelength_x"] = s.half_wavelength;
  j["stage_offsets"] = s.stage_offsets;
  j["pair_counts"] = s.pair_counts;
  j["tau"] = s.tau;
  return j;
}

SampledSignal embed(const SampledSignal& signal,
                    std::span<const std::uint8_t> message,
                    const Config& config) {
  validate(signal);
  const EmbedLayout layout =
      plan_layout(signal.frames(), signal.sample_rate, config);
  SampledSignal out = embed_key(signal, message, layout);
  if (config.mode == Mode::kPcm16) return quantize_pcm16_shaped(out);
  return out;
}

SampledSignal seal(const SampledSignal& signal, const Config& config) {
  validate(signal);
  const SwapSchedule schedule =
      plan_schedule(signal.frames(), signal.sample_rate, config.swap);
  SampledSignal out = seal(signal, schedule);
  if (config.mode == Mode::kPcm16) return quantize_pcm16(out);
  return out;
}

SampledSignal unseal(const SampledSignal& signal, const Config& config) {
  return seal(signal, config);
}

ExtractedKey extract_key(const SampledSignal& signal, const Config& config) {
  validate(signal);
  return extract_key(signal,
                     plan_layout(signal.frames(), signal.sample_rate, config));
}

VerificationReport verify(const SampledSignal& signal,
                          std::span<const std::uint8_t> claimed_message,
                          const Config& config) {
  validate(signal);
  const EmbedLayout layout =
      plan_layout(signal.frames(), signal.sample_rate, config);
  return verify(signal, claimed_message, layout,
                VerifyOptions{config.mode, config.residual_limit});
}

nlohmann::ordered_json effective_config(const Config& config,
                                        std::size_t n_samples,
                                        std::uint32_t sample_rate) {
  Json j = to_json(config);
  Json resolved;
  resolved["n_samples"] = n_samples;
  resolved["sample_rate"] = sample_rate;
  try {
    const EmbedLayout layout = plan_layout(n_samples, sample_rate, config);
    j["mid_bin"] = layout.mid_bin;
    resolved["layout"] = to_json(layout);
  } catch (const Error& e) {
    resolved["layout"] = {{"error", e.what()}};
  }
  try {
    resolved["schedule"] =
        to_json(plan_schedule(n_samples, sample_rate, config.swap));
  } catch (const Error& e) {
    resolved["schedule"] = {{"error", e.what()}};
  }
  j["resolved"] = resolved;
  return j;
}

}  // namespace fragmark
