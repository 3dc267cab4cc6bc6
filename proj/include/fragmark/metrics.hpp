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

#ifndef FRAGMARK_METRICS_HPP_
#define FRAGMARK_METRICS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include <json.hpp>

#include "fragmark/digest.hpp"
#include "fragmark/wav.hpp"

namespace fragmark {

enum class PsnrPeak {
  kReference,  // peak = max(x^2) of the original
  kFullScale,  // peak = 1.0
};

struct MetricOptions {
  double mos_n_const = 0.01;
  PsnrPeak psnr_peak = PsnrPeak::kReference;
};

// Normalized fields are empty when the reference makes them undefined
// (silent original, zero-sum original, 0/0 noise ratio).
struct DistortionReport {
  double md = 0.0;
  double ad = 0.0;
  std::optional<double> nad;
  double mse = 0.0;
  std::optional<double> nmse;
  std::optional<double> snr_db;   // may be +infinity
  std::optional<double> psnr_db;  // may be +infinity
  std::optional<double> nc;
  std::optional<double> qc;
  std::optional<double> ber;  // filled in by callers that decoded a digest
  std::optional<double> mos;
};

DistortionReport distortion(std::span<const double> original,
                            std::span<const double> modified,
                            const MetricOptions& options = {});

// Channels interleaved L, R, L, R, ... before applying the formulas.
DistortionReport distortion(const SampledSignal& original,
                            const SampledSignal& modified,
                            const MetricOptions& options = {});

std::array<DistortionReport, 2> distortion_per_channel(
    const SampledSignal& original, const SampledSignal& modified,
    const MetricOptions& options = {});

// Hamming distance / length over 0/1 bit vectors.
double ber(std::span<const std::uint8_t> expected_bits,
           std::span<const std::uint8_t> extracted_bits);
double ber(const Digest& expected, const Digest& extracted) noexcept;

// 5 / (1 + n_const * snr_db). Throws kDomainError when the denominator is
// not positive.
double mos(double snr_db, double n_const);

// Five-step impairment scale, e.g. "Imperceptible / Excellent" for 5.
std::string_view rating_label(double mos) noexcept;

// Flat object with fields md, ad, nad, mse, nmse, snr_db, psnr_db, nc, qc,
// ber, mos. Undefined values are null; +infinity is the string "inf".
nlohmann::ordered_json to_json(const DistortionReport& report);

}  // namespace fragmark

#endif  // FRAGMARK_METRICS_HPP_
