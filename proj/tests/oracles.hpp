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

// Independent reference implementations used by the tests. Written for
// clarity, not speed, and sharing no code with the library.
#ifndef FRAGMARK_TESTS_ORACLES_HPP_
#define FRAGMARK_TESTS_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "fragmark/wav.hpp"

namespace oracle {

using LComplex = std::complex<long double>;

// Direct O(N^2) sum in long double. The twiddle index is reduced mod N
// before the trig call so large k*t products stay exact.
inline std::vector<std::complex<double>> dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t k = 0; k < n; ++k) {
    LComplex acc = 0.0L;
    for (std::size_t t = 0; t < n; ++t) {
      const long double angle =
          -two_pi * static_cast<long double>((k * t) % n) / static_cast<long double>(n);
      acc += static_cast<long double>(x[t]) * LComplex(std::cos(angle), std::sin(angle));
    }
    out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

inline std::vector<double> idft(const std::vector<std::complex<double>>& c) {
  const std::size_t n = c.size();
  std::vector<double> out(n);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t t = 0; t < n; ++t) {
    long double acc = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      const long double angle =
          two_pi * static_cast<long double>((k * t) % n) / static_cast<long double>(n);
      acc += c[k].real() * std::cos(angle) - c[k].imag() * std::sin(angle);
    }
    out[t] = static_cast<double>(acc / n);
  }
  return out;
}

// Single DFT bin in long double, O(N).
inline std::complex<double> dft_bin(const std::vector<double>& x, std::size_t k) {
  const std::size_t n = x.size();
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  LComplex acc = 0.0L;
  for (std::size_t t = 0; t < n; ++t) {
    const long double angle =
        -two_pi * static_cast<long double>((k * t) % n) / static_cast<long double>(n);
    acc += static_cast<long double>(x[t]) * LComplex(std::cos(angle), std::sin(angle));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

struct Metrics {
  long double md = 0, ad = 0, nad = 0, mse = 0, nmse = 0, snr = 0, psnr = 0,
              nc = 0, qc = 0;
};

// Straight transcription of the metric definitions, long double sums.
inline Metrics metrics(const std::vector<double>& x, const std::vector<double>& y) {
  long double sum_abs_e = 0, sum_sq_e = 0, sum_abs_x = 0, sum_sq_x = 0,
              sum_x = 0, sum_xy = 0, max_x2 = 0, md = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double xi = x[i];
    const long double yi = y[i];
    const long double e = xi - yi;
    md = std::max(md, std::fabs(e));
    sum_abs_e += std::fabs(e);
    sum_sq_e += e * e;
    sum_abs_x += std::fabs(xi);
    sum_sq_x += xi * xi;
    sum_x += xi;
    sum_xy += xi * yi;
    max_x2 = std::max(max_x2, xi * xi);
  }
  const long double len = x.size();
  Metrics m;
  m.md = md;
  m.ad = sum_abs_e / len;
  m.nad = sum_abs_e / sum_abs_x;
  m.mse = sum_sq_e / len;
  m.nmse = sum_sq_e / sum_sq_x;
  m.snr = 10.0L * std::log10(sum_sq_x / sum_sq_e);
  m.psnr = 10.0L * std::log10(len * max_x2 / sum_sq_e);
  m.nc = sum_xy / sum_sq_x;
  m.qc = sum_xy / sum_x;
  return m;
}

inline std::vector<double> uniform_noise(std::mt19937_64& rng, std::size_t n,
                                         double amplitude) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<double> v(n);
  for (double& s : v) s = dist(rng);
  return v;
}

inline fragmark::SampledSignal random_signal(std::mt19937_64& rng, std::size_t n,
                                             double amplitude,
                                             std::uint32_t rate = 44100) {
  fragmark::SampledSignal s;
  s.sample_rate = rate;
  s.channels[0] = uniform_noise(rng, n, amplitude);
  s.channels[1] = uniform_noise(rng, n, amplitude);
  return s;
}

}  // namespace oracle

#endif  // FRAGMARK_TESTS_ORACLES_HPP_
