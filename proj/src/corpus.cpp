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

#include "fragmark/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "fragmark/error.hpp"
#include "fragmark/spectral.hpp"

namespace fragmark {
namespace {

using spectral::Complex;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFloorRms = 3e-4;

// std::normal_distribution is not specified bit-for-bit across standard
// libraries, so draw from the engine directly.
class Noise {
 public:
  explicit Noise(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

double rms(const std::vector<double>& x) {
  double acc = 0.0;
  for (const double v : x) acc += v * v;
  return x.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(x.size()));
}

void scale_to_rms(std::vector<double>& x, double target) {
  const double r = rms(x);
  if (r == 0.0) return;
  for (double& v : x) v *= target / r;
}

// Gaussian noise whose amplitude spectrum follows `shape(hz)`; unit RMS.
std::vector<double> shaped_noise(std::size_t n, std::uint32_t rate, Noise& rng,
                                 const std::function<double(double)>& shape,
                                 const spectral::FftPlan& plan) {
  std::vector<Complex> bins(n);
  for (std::size_t k = 1; 2 * k < n; ++k) {
    const double hz = static_cast<double>(k) * rate / static_cast<double>(n);
    const double g = shape(hz);
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    bins[k] = g * Complex(re, im);
    bins[n - k] = std::conj(bins[k]);
  }
  std::vector<double> x = spectral::inverse(bins, plan);
  scale_to_rms(x, 1.0);
  return x;
}

// Smooth raised-cosine step from 0 at `lo` to 1 at `hi`.
double ramp(double hz, double lo, double hi) {
  if (hz <= lo) return 0.0;
  if (hz >= hi) return 1.0;
  return 0.5 - 0.5 * std::cos(kPi * (hz - lo) / (hi - lo));
}

double fade(std::size_t i, std::size_t n, std::size_t len) {
  if (i < len) return 0.5 - 0.5 * std::cos(kPi * i / len);
  if (n - 1 - i < len) return 0.5 - 0.5 * std::cos(kPi * (n - 1 - i) / len);
  return 1.0;
}

std::vector<double> floor_noise(std::size_t n, std::uint32_t rate, Noise& rng,
                                const spectral::FftPlan& plan) {
  std::vector<double> x = shaped_noise(
      n, rate, rng, [](double hz) { return ramp(hz, 300.0, 600.0); }, plan);
  for (double& v : x) v *= kFloorRms;
  return x;
}

std::vector<double> tone_mixture(std::size_t n, std::uint32_t rate,
                                 std::size_t channel, Noise& rng) {
  static constexpr std::array<double, 6> kHz{440.0,  554.37, 659.25,
                                             880.0, 1318.5, 2637.0};
  static constexpr std::array<double, 6> kGain{0.30, 0.22, 0.18,
                                               0.12, 0.08, 0.04};
  std::array<double, 6> phase{};
  for (double& p : phase) p = kTwoPi * rng.uniform();
  std::vector<double> x(n);
  const double fs = rate;
  const double pan = channel == 0 ? 1.0 : 0.8;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i / fs;
    double v = 0.0;
    for (std::size_t j = 0; j < kHz.size(); ++j) {
      const double tremolo = 1.0 + 0.2 * std::sin(kTwoPi * (0.5 + 0.3 * j) * t);
      v += kGain[j] * tremolo * std::sin(kTwoPi * kHz[j] * t + phase[j]);
    }
    x[i] = 0.7 * pan * v * fade(i, n, rate / 20);
  }
  return x;
}

// Exponential sweep 400 Hz -> 12 kHz; the right channel runs a quarter
// period behind.
std::vector<double> chirp(std::size_t n, std::uint32_t rate, std::size_t channel) {
  const double f0 = 400.0;
  const double f1 = 12000.0;
  const double duration = static_cast<double>(n) / rate;
  const double k = std::log(f1 / f0) / duration;
  const double offset = channel == 0 ? 0.0 : kPi / 2.0;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    const double phase = kTwoPi * f0 * (std::exp(k * t) - 1.0) / k;
    x[i] = 0.5 * std::sin(phase + offset) * fade(i, n, rate / 20);
  }
  return x;
}

double speech_shape(double hz) {
  // Long-term speech spectrum: flat 300-800 Hz, about -9 dB/octave above.
  const double rise = ramp(hz, 180.0, 350.0);
  const double tilt = hz <= 800.0 ? 1.0 : std::pow(800.0 / hz, 1.5);
  return rise * tilt;
}

std::vector<double> syllabic(std::vector<double> x, std::uint32_t rate,
                             Noise& rng) {
  const double phase = kTwoPi * rng.uniform();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = static_cast<double>(i) / rate;
    const double env = 0.55 + 0.45 * std::sin(kTwoPi * 4.0 * t + phase);
    x[i] *= env;
  }
  return x;
}

std::vector<double> bursts(std::size_t n, std::uint32_t rate, Noise& rng,
                           const spectral::FftPlan& plan) {
  std::vector<double> noise = shaped_noise(
      n, rate, rng,
      [](double hz) { return ramp(hz, 700.0, 1000.0) * (1.0 - ramp(hz, 5000.0, 7000.0)); },
      plan);
  std::vector<double> x(n, 0.0);
  const double duration = static_cast<double>(n) / rate;
  for (const double start_frac : {0.15, 0.45, 0.75}) {
    const auto start = static_cast<std::size_t>(start_frac * duration * rate);
    const auto len = static_cast<std::size_t>(0.05 * duration * rate);
    for (std::size_t i = 0; i < len && start + i < n; ++i) {
      const double w = std::sin(kPi * static_cast<double>(i) / len);
      x[start + i] = 0.25 * w * w * noise[start + i];
    }
  }
  return x;
}

std::uint64_t song_seed(std::size_t index, std::uint64_t seed) {
  return seed + 0x9E3779B97F4A7C15ULL * (index + 1);
}

}  // namespace

std::string_view demo_song_name(std::size_t index) {
  switch (index) {
    case 0: return "tone_mixture";
    case 1: return "chirp";
    case 2: return "filtered_noise";
    case 3: return "speech_shaped_noise";
    case 4: return "silence_bursts";
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "corpus: no demo song " + std::to_string(index));
  }
}

SampledSignal synthesize_demo_song(std::size_t index, std::uint64_t seed,
                                   double seconds, std::uint32_t sample_rate) {
  demo_song_name(index);
  if (!(seconds > 0.0) || sample_rate == 0) {
    throw Error(ErrorCode::kInvalidArgument, "corpus: bad duration or rate");
  }
  const auto n = static_cast<std::size_t>(std::llround(seconds * sample_rate));
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "corpus: too short");

  Noise rng(song_seed(index, seed));
  const spectral::FftPlan plan(n);
  SampledSignal song;
  song.sample_rate = sample_rate;
  song.source_format = SampleFormat::kFloat32;

  for (std::size_t c = 0; c < 2; ++c) {
    std::vector<double> x;
    switch (index) {
      case 0:
        x = tone_mixture(n, sample_rate, c, rng);
        break;
      case 1:
        x = chirp(n, sample_rate, c);
        break;
      case 2:
        x = shaped_noise(
            n, sample_rate, rng,
            [](double hz) {
              return ramp(hz, 400.0, 600.0) * (1.0 - ramp(hz, 6000.0, 9000.0));
            },
            plan);
        scale_to_rms(x, 0.12);
        break;
      case 3:
        x = syllabic(shaped_noise(n, sample_rate, rng, speech_shape, plan),
                     sample_rate, rng);
        scale_to_rms(x, 0.1);
        break;
      default:
        // Right channel stays digital silence.
        x = c == 0 ? bursts(n, sample_rate, rng, plan) : std::vector<double>(n, 0.0);
        break;
    }
    if (index != 4) {
      const std::vector<double> floor = floor_noise(n, sample_rate, rng, plan);
      for (std::size_t i = 0; i < n; ++i) x[i] += floor[i];
    }
    double peak = 0.0;
    for (const double v : x) peak = std::max(peak, std::abs(v));
    if (peak > 0.9) {
      for (double& v : x) v *= 0.9 / peak;
    }
    song.channels[c] = std::move(x);
  }
  return song;
}

std::vector<DemoSong> demo_corpus(std::uint64_t seed, double seconds,
                                  std::uint32_t sample_rate) {
  std::vector<DemoSong> songs;
  for (std::size_t i = 0; i < kDemoSongCount; ++i) {
    songs.push_back({std::string(demo_song_name(i)),
                     synthesize_demo_song(i, seed, seconds, sample_rate)});
  }
  return songs;
}

}  // namespace fragmark
