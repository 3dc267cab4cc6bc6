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

#include "fragmark/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fragmark/error.hpp"

namespace fragmark::spectral {
namespace {

// Prime factors above this go through Bluestein instead of an O(R^2)
// butterfly.
constexpr std::size_t kMaxDirectRadix = 64;

std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> radices;
  while (n % 4 == 0) {
    radices.push_back(4);
    n /= 4;
  }
  while (n % 2 == 0) {
    radices.push_back(2);
    n /= 2;
  }
  for (std::size_t p = 3; p * p <= n; p += 2) {
    while (n % p == 0) {
      radices.push_back(p);
      n /= p;
    }
  }
  if (n > 1) radices.push_back(n);
  return radices;
}

std::vector<Complex> unit_roots(std::size_t n) {
  std::vector<Complex> roots(n);
  const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double angle = step * static_cast<double>(t);
    roots[t] = {std::cos(angle), std::sin(angle)};
  }
  return roots;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

struct FftPlan::Bluestein {
  std::size_t m = 0;
  std::vector<Complex> chirp;         // exp(-i pi k^2 / n)
  std::vector<Complex> kernel_bins;   // FFT of the conjugate chirp, length m
  std::unique_ptr<FftPlan> inner;
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "fft: zero length");
  radices_ = factorize(n);
  const bool direct = std::all_of(radices_.begin(), radices_.end(), [](std::size_t r) {
    return r <= kMaxDirectRadix;
  });
  if (direct) {
    roots_ = unit_roots(n);
    return;
  }

  radices_.clear();
  auto bs = std::make_unique<Bluestein>();
  bs->m = next_pow2(2 * n - 1);
  bs->inner = std::make_unique<FftPlan>(bs->m);
  bs->chirp.resize(n);
  const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % two_n;
    const double angle =
        -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    bs->chirp[k] = {std::cos(angle), std::sin(angle)};
  }
  bs->kernel_bins.assign(bs->m, Complex{});
  bs->kernel_bins[0] = std::conj(bs->chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    bs->kernel_bins[k] = std::conj(bs->chirp[k]);
    bs->kernel_bins[bs->m - k] = std::conj(bs->chirp[k]);
  }
  bs->inner->forward(bs->kernel_bins);
  bluestein_ = std::move(bs);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::stockham(std::span<Complex> data, std::span<Complex> work) const {
  const std::size_t n = n_;
  Complex* src = data.data();
  Complex* dst = work.data();
  std::array<Complex, kMaxDirectRadix> v{};
  std::array<Complex, kMaxDirectRadix> y{};
  const double sin60 = std::sqrt(3.0) / 2.0;

  std::size_t span_len = 1;  // length of the sub-transforms already done
  for (const std::size_t radix : radices_) {
    const std::size_t groups = n / radix;
    const std::size_t twiddle_step = n / (span_len * radix);
    const std::size_t root_step = n / radix;
    for (std::size_t block = 0; block < groups / span_len; ++block) {
      for (std::size_t k = 0; k < span_len; ++k) {
        const std::size_t j = block * span_len + k;
        v[0] = src[j];
        for (std::size_t q = 1; q < radix; ++q) {
          v[q] = src[j + q * groups];
          if (k != 0) v[q] *= roots_[k * q * twiddle_step];
        }

        switch (radix) {
          case 2:
            y[0] = v[0] + v[1];
            y[1] = v[0] - v[1];
            break;
          case 3: {
            const Complex s = v[1] + v[2];
            const Complex d = v[1] - v[2];
            const Complex m = v[0] - 0.5 * s;
            const Complex rot{d.imag() * sin60, -d.real() * sin60};  // -i sin60 d
            y[0] = v[0] + s;
            y[1] = m + rot;
            y[2] = m - rot;
            break;
          }
          case 4: {
            const Complex t0 = v[0] + v[2];
            const Complex t1 = v[0] - v[2];
            const Complex t2 = v[1] + v[3];
            const Complex d = v[1] - v[3];
            const Complex t3{d.imag(), -d.real()};  // -i d
            y[0] = t0 + t2;
            y[1] = t1 + t3;
            y[2] = t0 - t2;
            y[3] = t1 - t3;
            break;
          }
          default:
            for (std::size_t s = 0; s < radix; ++s) {
              Complex acc = v[0];
              for (std::size_t q = 1; q < radix; ++q) {
                acc += v[q] * roots_[((q * s) % radix) * root_step];
              }
              y[s] = acc;
            }
        }

        const std::size_t base = block * span_len * radix + k;
        for (std::size_t q = 0; q < radix; ++q) dst[base + q * span_len] = y[q];
      }
    }
    std::swap(src, dst);
    span_len *= radix;
  }
  if (src != data.data()) std::copy(src, src + n, data.data());
}

void FftPlan::forward(std::span<Complex> data) const {
  if (data.size() != n_) {
    throw Error(ErrorCode::kWrongLength,
                "fft: plan length " + std::to_string(n_) + ", data length " +
                    std::to_string(data.size()));
  }
  if (!bluestein_) {
    std::vector<Complex> work(n_);
    stockham(data, work);
    return;
  }

  const Bluestein& bs = *bluestein_;
  std::vector<Complex> a(bs.m);
  for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * bs.chirp[k];
  bs.inner->forward(a);
  for (std::size_t k = 0; k < bs.m; ++k) a[k] *= bs.kernel_bins[k];
  bs.inner->backward(a);
  const double inv_m = 1.0 / static_cast<double>(bs.m);
  for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * bs.chirp[k] * inv_m;
}

void FftPlan::backward(std::span<Complex> data) const {
  for (Complex& c : data) c = std::conj(c);
  forward(data);
  for (Complex& c : data) c = std::conj(c);
}

std::vector<Complex> forward(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "fft: empty input");
  return forward(samples, FftPlan(samples.size()));
}

std::vector<Complex> forward(std::span<const double> samples,
                             const FftPlan& plan) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "fft: empty input");
  std::vector<Complex> bins(samples.size());
  for (std::size_t t = 0; t < samples.size(); ++t) {
    if (!std::isfinite(samples[t])) {
      throw Error(ErrorCode::kInvalidArgument, "fft: non-finite sample");
    }
    bins[t] = {samples[t], 0.0};
  }
  plan.forward(bins);
  return bins;
}

std::vector<double> inverse(std::span<const Complex> bins) {
  if (bins.empty()) throw Error(ErrorCode::kEmptyInput, "ifft: empty input");
  return inverse(bins, FftPlan(bins.size()));
}

std::vector<double> inverse(std::span<const Complex> bins,
                            const FftPlan& plan) {
  if (bins.empty()) throw Error(ErrorCode::kEmptyInput, "ifft: empty input");
  double peak = 0.0;
  for (const Complex& c : bins) peak = std::max(peak, std::abs(c));
  const double defect = hermitian_defect(bins);
  if (defect > kHermitianTolerance * peak) {
    throw Error(ErrorCode::kNonHermitianInput,
                "ifft: spectrum is not Hermitian (defect " +
                    std::to_string(defect) + ")");
  }
  std::vector<Complex> work(bins.begin(), bins.end());
  plan.backward(work);
  const double inv_n = 1.0 / static_cast<double>(bins.size());
  std::vector<double> samples(bins.size());
  for (std::size_t t = 0; t < samples.size(); ++t) {
    samples[t] = work[t].real() * inv_n;
  }
  return samples;
}

double hermitian_defect(std::span<const Complex> bins) noexcept {
  const std::size_t n = bins.size();
  double worst = 0.0;
  for (std::size_t k = 0; k <= n / 2 && n > 0; ++k) {
    const Complex mirror = bins[(n - k) % n];
    worst = std::max(worst, std::abs(mirror - std::conj(bins[k])));
  }
  return worst;
}

void enforce_hermitian(std::span<Complex> bins) noexcept {
  const std::size_t n = bins.size();
  if (n == 0) return;
  bins[0].imag(0.0);
  for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
    bins[n - k] = std::conj(bins[k]);
  }
  if (n % 2 == 0) bins[n / 2].imag(0.0);
}

void enforce_hermitian(std::span<Complex> bins,
                       std::span<const std::size_t> modified) noexcept {
  const std::size_t n = bins.size();
  for (const std::size_t k : modified) {
    if (k >= n) continue;
    if (k == 0 || 2 * k == n) {
      bins[k].imag(0.0);
    } else {
      bins[n - k] = std::conj(bins[k]);
    }
  }
}

std::size_t bin_for_hz(double hz, std::uint32_t sample_rate,
                       std::size_t n_samples) {
  const double nyquist = static_cast<double>(sample_rate) / 2.0;
  if (!(hz >= 0.0) || hz > nyquist) {
    throw Error(ErrorCode::kOutOfNyquistRange,
                "frequency " + std::to_string(hz) + " Hz outside [0, " +
                    std::to_string(nyquist) + "]");
  }
  return static_cast<std::size_t>(std::llround(
      hz * static_cast<double>(n_samples) / static_cast<double>(sample_rate)));
}

double cosine_coefficient(std::span<const Complex> bins, std::size_t n) {
  const std::size_t size = bins.size();
  if (size == 0 || n >= size) {
    throw Error(ErrorCode::kInvalidArgument, "harmonic index out of range");
  }
  return ((bins[n] + bins[(size - n) % size]) / static_cast<double>(size)).real();
}

double sine_coefficient(std::span<const Complex> bins, std::size_t n) {
  const std::size_t size = bins.size();
  if (size == 0 || n >= size) {
    throw Error(ErrorCode::kInvalidArgument, "harmonic index out of range");
  }
  const Complex i{0.0, 1.0};
  return (i * (bins[n] - bins[(size - n) % size]) / static_cast<double>(size)).real();
}

}  // namespace fragmark::spectral
