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

#ifndef FRAGMARK_CORPUS_HPP_
#define FRAGMARK_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fragmark/wav.hpp"

namespace fragmark {

inline constexpr std::size_t kDemoSongCount = 5;

// 0 tone_mixture, 1 chirp, 2 filtered_noise, 3 speech_shaped_noise,
// 4 silence_bursts. Throws kInvalidArgument for other indices.
std::string_view demo_song_name(std::size_t index);

// Deterministic for a given (index, seed, seconds, sample_rate). The four
// dense songs have RMS >= 0.05 per channel, keep their energy away from the
// embedding band and carry a faint floor up to Nyquist so the ultrasonic
// swaps have something to move. The burst track has a few band-limited
// bursts on the left channel and digital silence on the right.
SampledSignal synthesize_demo_song(std::size_t index, std::uint64_t seed,
                                   double seconds = 10.0,
                                   std::uint32_t sample_rate = 44100);

struct DemoSong {
  std::string name;
  SampledSignal signal;
};

std::vector<DemoSong> demo_corpus(std::uint64_t seed, double seconds = 10.0,
                                  std::uint32_t sample_rate = 44100);

}  // namespace fragmark

#endif  // FRAGMARK_CORPUS_HPP_
