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

#include "fragmark/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fragmark/error.hpp"

namespace fragmark {
namespace {

// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

std::optional<double> ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

std::optional<double> decibels(double signal_power, double noise_power) {
  if (signal_power == 0.0) return std::nullopt;
  if (noise_power == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal_power / noise_power);
}

std::optional<double> mos_of(const std::optional<double>& snr_db, double n_const) {
  if (!snr_db) return std::nullopt;
  if (std::isinf(*snr_db)) {
    if (n_const == 0.0) return 5.0;
    return std::nullopt;
  }
  const double den = 1.0 + n_const * *snr_db;
  if (!(den > 0.0)) return std::nullopt;
  return 5.0 / den;
}

nlohmann::ordered_json number_or_null(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  return *v;
}

}  // namespace

DistortionReport distortion(std::span<const double> x,
                            std::span<const double> y,
                            const MetricOptions& options) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "metrics: lengths " + std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  }
  Accumulator abs_err, sq_err, abs_ref, sq_ref, sum_ref, cross;
  double md = 0.0;
  double peak_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = x[i] - y[i];
    md = std::max(md, std::abs(e));
    abs_err.add(std::abs(e));
    sq_err.add(e * e);
    abs_ref.add(std::abs(x[i]));
    sq_ref.add(x[i] * x[i]);
    sum_ref.add(x[i]);
    cross.add(x[i] * y[i]);
    peak_sq = std::max(peak_sq, x[i] * x[i]);
  }

  DistortionReport r;
  const double len = static_cast<double>(x.size());
  r.md = md;
  if (!x.empty()) {
    r.ad = abs_err.value() / len;
    r.mse = sq_err.value() / len;
  }
  const double noise = sq_err.value();
  const double power = sq_ref.value();
  r.nad = ratio(abs_err.value(), abs_ref.value());
  r.nmse = ratio(noise, power);
  r.snr_db = decibels(power, noise);
  const double peak =
      options.psnr_peak == PsnrPeak::kReference ? peak_sq : 1.0;
  if (!x.empty()) r.psnr_db = decibels(len * peak, noise);
  r.nc = ratio(cross.value(), power);
  r.qc = ratio(cross.value(), sum_ref.value());
  r.mos = mos_of(r.snr_db, options.mos_n_const);
  return r;
}

namespace {

std::vector<double> interleave(const SampledSignal& s) {
  std::vector<double> out(2 * s.frames());
  for (std::size_t i = 0; i < s.frames(); ++i) {
    out[2 * i] = s.channels[0][i];
    out[2 * i + 1] = s.channels[1][i];
  }
  return out;
}

void check_shapes(const SampledSignal& a, const SampledSignal& b) {
  validate(a);
  validate(b);
  if (a.frames() != b.frames()) {
    throw Error(ErrorCode::kLengthMismatch,
                "metrics: " + std::to_string(a.frames()) + " vs " +
                    std::to_string(b.frames()) + " frames");
  }
}

}  // namespace

DistortionReport distortion(const SampledSignal& original,
                            const SampledSignal& modified,
                            const MetricOptions& options) {
  check_shapes(original, modified);
  return distortion(interleave(original), interleave(modified), options);
}

std::array<DistortionReport, 2> distortion_per_channel(
    const SampledSignal& original, const SampledSignal& modified,
    const MetricOptions& options) {
  check_shapes(original, modified);
  return {distortion(original.channels[0], modified.channels[0], options),
          distortion(original.channels[1], modified.channels[1], options)};
}

double ber(std::span<const std::uint8_t> expected_bits,
           std::span<const std::uint8_t> extracted_bits) {
  if (expected_bits.size() != extracted_bits.size()) {
    throw Error(ErrorCode::kLengthMismatch, "ber: bit streams differ in length");
  }
  if (expected_bits.empty()) {
    throw Error(ErrorCode::kEmptyInput, "ber: empty bit streams");
  }
  std::size_t errors = 0;
  for (std::size_t i = 0; i < expected_bits.size(); ++i) {
    errors += (expected_bits[i] != 0) != (extracted_bits[i] != 0);
  }
  return static_cast<double>(errors) / static_cast<double>(expected_bits.size());
}

double ber(const Digest& expected, const Digest& extracted) noexcept {
  int errors = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    errors += std::popcount(static_cast<unsigned>(expected[i] ^ extracted[i]));
  }
  return static_cast<double>(errors) / 128.0;
}

double mos(double snr_db, double n_const) {
  const double den = 1.0 + n_const * snr_db;
  if (!(den > 0.0)) {
    throw Error(ErrorCode::kDomainError,
                "mos: 1 + N * SNR = " + std::to_string(den) + " is not positive");
  }
  return 5.0 / den;
}

std::string_view rating_label(double mos) noexcept {
  const double rounded = std::round(mos);
  if (!(rounded >= 2.0)) return "Very annoying / Bad";
  if (rounded >= 5.0) return "Imperceptible / Excellent";
  if (rounded >= 4.0) return "Perceptible, not annoying / Good";
  if (rounded >= 3.0) return "Slightly annoying / Fair";
  return "Annoying / Poor";
}

nlohmann::ordered_json to_json(const DistortionReport& r) {
  nlohmann::ordered_json j;
  j["md"] = r.md;
  j["ad"] = r.ad;
  j["nad"] = number_or_null(r.nad);
  j["mse"] = r.mse;
  j["nmse"] = number_or_null(r.nmse);
  j["snr_db"] = number_or_null(r.snr_db);
  j["psnr_db"] = number_or_null(r.psnr_db);
  j["nc"] = number_or_null(r.nc);
  j["qc"] = number_or_null(r.qc);
  j["ber"] = number_or_null(r.ber);
  j["mos"] = number_or_null(r.mos);
  return j;
}

}  // namespace fragmark
