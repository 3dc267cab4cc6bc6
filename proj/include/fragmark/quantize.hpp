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

#ifndef FRAGMARK_QUANTIZE_HPP_
#define FRAGMARK_QUANTIZE_HPP_

#include <span>
#include <vector>

#include "fragmark/wav.hpp"

namespace fragmark {

inline constexpr double kPcm16Step = 1.0 / 32768.0;

// Snap every sample to the 16-bit grid exactly as write_wav(kPcm16) would.
std::vector<double> quantize_pcm16(std::span<const double> samples);
SampledSignal quantize_pcm16(const SampledSignal& signal);

// Second-order error-feedback requantizer. The rounding error is shaped by
// (1 - z^-1)^2, which leaves the output on the 16-bit grid but moves almost
// all quantization noise out of the lowest bins. Per-sample deviation from
// the input is bounded by 2 steps away from full scale.
std::vector<double> quantize_pcm16_shaped(std::span<const double> samples);
SampledSignal quantize_pcm16_shaped(const SampledSignal& signal);

// Same loop onto the float32 grid, used by the float32 writer. Needed when
// the source was float32-exact: the embedding perturbation is far below one
// ulp per sample and plain rounding would undo it.
std::vector<double> quantize_float32_shaped(std::span<const double> samples);
SampledSignal quantize_float32_shaped(const SampledSignal& signal);

}  // namespace fragmark

#endif  // FRAGMARK_QUANTIZE_HPP_
