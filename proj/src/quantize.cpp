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

#include "fragmark/quantize.hpp"

#include <algorithm>
#include <cmath>

namespace fragmark {

std::vector<double> quantize_pcm16(std::span<const double> samples) {
  std::vector<double> out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(),
                 [](double s) { return from_pcm16(to_pcm16(s)); });
  return out;
}

SampledSignal quantize_pcm16(const SampledSignal& signal) {
  SampledSignal out = signal.with_channels(quantize_pcm16(signal.channels[0]),
                                           quantize_pcm16(signal.channels[1]));
  out.source_format = SampleFormat::kPcm16;
  return out;
}

std::vector<double> quantize_pcm16_shaped(std::span<const double> samples) {
  std::vector<double> out(samples.size());
  double e1 = 0.0;  // error one sample back
  double e2 = 0.0;  // error two samples back
  for (std::size_t t = 0; t < samples.size(); ++t) {
    // y = x + e[t] - 2 e[t-1] + e[t-2]
    const double target = samples[t] - 2.0 * e1 + e2;
    const double y = from_pcm16(to_pcm16(target));
    // Clipping can make the raw error arbitrarily large; keep the loop stable.
    const double e = std::clamp(y - target, -kPcm16Step, kPcm16Step);
    out[t] = y;
    e2 = e1;
    e1 = e;
  }
  return out;
}

SampledSignal quantize_pcm16_shaped(const SampledSignal& signal) {
  SampledSignal out =
      signal.with_channels(quantize_pcm16_shaped(signal.channels[0]),
                           quantize_pcm16_shaped(signal.channels[1]));
  out.source_format = SampleFormat::kPcm16;
  return out;
}

std::vector<double> quantize_float32_shaped(std::span<const double> samples) {
  std::vector<double> out(samples.size());
  double e1 = 0.0;
  double e2 = 0.0;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const double target = samples[t] - 2.0 * e1 + e2;
    const double y = static_cast<double>(static_cast<float>(target));
    out[t] = y;
    e2 = e1;
    e1 = std::isfinite(y) ? y - target : 0.0;
  }
  return out;
}

SampledSignal quantize_float32_shaped(const SampledSignal& signal) {
  SampledSignal out =
      signal.with_channels(quantize_float32_shaped(signal.channels[0]),
                           quantize_float32_shaped(signal.channels[1]));
  out.source_format = SampleFormat::kFloat32;
  return out;
}

}  // namespace fragmark
