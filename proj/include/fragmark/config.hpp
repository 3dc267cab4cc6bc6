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

#ifndef FRAGMARK_CONFIG_HPP_
#define FRAGMARK_CONFIG_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fragmark/metrics.hpp"

namespace fragmark {

// kFloat keeps the literal 1e-4 level alphabet and writes float32 files.
// kPcm16 writes 16-bit files and uses a level alphabet large enough to sit
// far above the spectral footprint of 16-bit rounding.
enum class Mode { kFloat, kPcm16 };

inline constexpr double kFloatScale = 1e-4;
inline constexpr double kPcm16Scale = 0.25;

struct SwapSettings {
  double origin_hz = 20000.0;
  std::size_t half_wavelength = 10;
  std::vector<std::size_t> stage_offsets{0, 3, 7};
  double tau = 0.0;  // reserved; carried through reports, no effect
};

struct Config {
  Mode mode = Mode::kFloat;
  double scale = kFloatScale;
  std::size_t base_bin = 1;
  std::size_t stride = 2;
  std::optional<std::size_t> mid_bin;  // empty: bin of 150 Hz
  SwapSettings swap;
  // pcm16 verification: allowed coded-bin residual energy, in units of the
  // expected energy of one plain 16-bit rounding pass.
  double residual_limit = 2.0;
  MetricOptions metrics;

  static Config defaults(Mode mode);
};

std::string_view mode_name(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view name) noexcept;

// Parses the JSON config document. Keys absent from the document take the
// defaults of the effective mode (`mode_override` if given, otherwise the
// document's "mode", otherwise float). Unknown keys are rejected with
// kInvalidConfig.
Config parse_config(std::string_view json_text,
                    std::optional<Mode> mode_override = std::nullopt);

nlohmann::ordered_json to_json(const Config& config);

}  // namespace fragmark

#endif  // FRAGMARK_CONFIG_HPP_
