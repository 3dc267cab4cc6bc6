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

#ifndef FRAGMARK_SPECTRAL_HPP_
#define FRAGMARK_SPECTRAL_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace fragmark::spectral {

using Complex = std::complex<double>;

// Conventions used everywhere in this library:
//   forward:  C_k = sum_t s_t exp(-2 pi i k t / N)          (unnormalized)
//   inverse:  s_t = (1/N) sum_k C_k exp(+2 pi i k t / N)

// Reusable transform of one fixed length. Any N >= 1 is supported: lengths
// whose prime factors are all small run through a mixed-radix Stockham
// transform, anything else goes through Bluestein's chirp-z convolution.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::size_t size() const noexcept { return n_; }

  // In-place unnormalized transform. `data.size()` must equal size().
  void forward(std::span<Complex> data) const;
  // In-place, unnormalized (no 1/N factor).
  void backward(std::span<Complex> data) const;

 private:
  struct Bluestein;

  void stockham(std::span<Complex> data, std::span<Complex> work) const;

  std::size_t n_ = 0;
  std::vector<std::size_t> radices_;
  std::vector<Complex> roots_;  // exp(-2 pi i t / N), t in [0, N)
  std::unique_ptr<Bluestein> bluestein_;
};

// Spectrum of one real channel.
std::vector<Complex> forward(std::span<const double> samples);
std::vector<Complex> forward(std::span<const double> samples,
                             const FftPlan& plan);

// Real synthesis. Bins must be Hermitian-symmetric up to
// kHermitianTolerance * max|C|; the residual imaginary part is discarded.
std::vector<double> inverse(std::span<const Complex> bins);
std::vector<double> inverse(std::span<const Complex> bins,
                            const FftPlan& plan);

inline constexpr double kHermitianTolerance = 1e-9;

// Largest |C_{N-k} - conj(C_k)| over all k, including the imaginary parts of
// C_0 and C_{N/2}.
double hermitian_defect(std::span<const Complex> bins) noexcept;

// Treat bins [0, N/2] as authoritative: mirror C_{N-k} = conj(C_k) and zero
// the imaginary parts of DC and (for even N) Nyquist.
void enforce_hermitian(std::span<Complex> bins) noexcept;

// Mirror only the listed nonnegative-frequency bins. Cheaper when a handful
// of bins were edited in an otherwise Hermitian spectrum.
void enforce_hermitian(std::span<Complex> bins,
                       std::span<const std::size_t> modified) noexcept;

// round(f * N / fs). Throws kOutOfNyquistRange unless 0 <= f <= fs / 2.
std::size_t bin_for_hz(double hz, std::uint32_t sample_rate,
                       std::size_t n_samples);

// Real-series coefficients housed next to the complex ones:
// a_n = c_n + c_{-n}, b_n = i (c_n - c_{-n}), with c = C / N.
double cosine_coefficient(std::span<const Complex> bins, std::size_t n);
double sine_coefficient(std::span<const Complex> bins, std::size_t n);

}  // namespace fragmark::spectral

#endif  // FRAGMARK_SPECTRAL_HPP_
