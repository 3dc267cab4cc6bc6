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

#include "fragmark/config.hpp"

#include <cmath>
#include <set>
#include <string>

#include "fragmark/error.hpp"

namespace fragmark {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, "config: " + what);
}

void reject_unknown(const Json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& item : object.items()) {
    if (!allowed.count(item.key())) bad("unknown key '" + where + item.key() + "'");
  }
}

double get_number(const Json& j, const std::string& key) {
  if (!j.is_number()) bad("'" + key + "' must be a number");
  return j.get<double>();
}

std::size_t get_index(const Json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    bad("'" + key + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

void check(const Config& c) {
  if (!(c.scale > 0.0) || !std::isfinite(c.scale)) bad("scale must be positive");
  if (c.stride == 0) bad("stride must be at least 1");
  if (c.base_bin == 0) bad("base_bin must be at least 1 (DC is never coded)");
  if (c.mid_bin && *c.mid_bin == 0) bad("mid_bin must be at least 1");
  if (c.swap.half_wavelength == 0) bad("swap.half_wavelength_x must be at least 1");
  if (c.swap.stage_offsets.empty()) bad("swap.stage_offsets must not be empty");
  if (!(c.swap.origin_hz > 0.0)) bad("swap.origin_hz must be positive");
  if (!(c.residual_limit > 0.0)) bad("residual_limit must be positive");
  if (!std::isfinite(c.metrics.mos_n_const)) bad("mos_n_const must be finite");
}

}  // namespace

Config Config::defaults(Mode mode) {
  Config c;
  c.mode = mode;
  c.scale = mode == Mode::kPcm16 ? kPcm16Scale : kFloatScale;
  return c;
}

std::string_view mode_name(Mode mode) noexcept {
  return mode == Mode::kPcm16 ? "pcm16" : "float";
}

std::optional<Mode> parse_mode(std::string_view name) noexcept {
  if (name == "float") return Mode::kFloat;
  if (name == "pcm16") return Mode::kPcm16;
  return std::nullopt;
}

Config parse_config(std::string_view json_text, std::optional<Mode> mode_override) {
  Json doc;
  try {
    doc = Json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  reject_unknown(doc,
                 {"mode", "scale", "base_bin", "stride", "mid_bin", "swap",
                  "residual_limit", "mos_n_const", "psnr_peak"},
                 "");

  Mode mode = Mode::kFloat;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) bad("'mode' must be a string");
    const auto parsed = parse_mode(doc["mode"].get<std::string>());
    if (!parsed) bad("'mode' must be \"float\" or \"pcm16\"");
    mode = *parsed;
  }
  if (mode_override) mode = *mode_override;

  Config c = Config::defaults(mode);
  if (doc.contains("scale")) c.scale = get_number(doc["scale"], "scale");
  if (doc.contains("base_bin")) c.base_bin = get_index(doc["base_bin"], "base_bin");
  if (doc.contains("stride")) c.stride = get_index(doc["stride"], "stride");
  if (doc.contains("mid_bin") && !doc["mid_bin"].is_null()) {
    c.mid_bin = get_index(doc["mid_bin"], "mid_bin");
  }
  if (doc.contains("residual_limit")) {
    c.residual_limit = get_number(doc["residual_limit"], "residual_limit");
  }
  if (doc.contains("mos_n_const")) {
    c.metrics.mos_n_const = get_number(doc["mos_n_const"], "mos_n_const");
  }
  if (doc.contains("psnr_peak")) {
    const Json& p = doc["psnr_peak"];
    if (p == "reference") {
      c.metrics.psnr_peak = PsnrPeak::kReference;
    } else if (p == "full_scale") {
      c.metrics.psnr_peak = PsnrPeak::kFullScale;
    } else {
      bad("'psnr_peak' must be \"reference\" or \"full_scale\"");
    }
  }
  if (doc.contains("swap")) {
    const Json& s = doc["swap"];
    if (!s.is_object()) bad("'swap' must be an object");
    reject_unknown(s, {"origin_hz", "half_wavelength_x", "stage_offsets", "tau"},
                   "swap.");
    if (s.contains("origin_hz")) {
      c.swap.origin_hz = get_number(s["origin_hz"], "swap.origin_hz");
    }
    if (s.contains("half_wavelength_x")) {
      c.swap.half_wavelength =
          get_index(s["half_wavelength_x"], "swap.half_wavelength_x");
    }
    if (s.contains("stage_offsets")) {
      if (!s["stage_offsets"].is_array()) bad("'swap.stage_offsets' must be an array");
      c.swap.stage_offsets.clear();
      for (const Json& o : s["stage_offsets"]) {
        c.swap.stage_offsets.push_back(get_index(o, "swap.stage_offsets[]"));
      }
    }
    if (s.contains("tau")) c.swap.tau = get_number(s["tau"], "swap.tau");
  }
  check(c);
  return c;
}

nlohmann::ordered_json to_json(const Config& c) {
  Json j;
  j["mode"] = mode_name(c.mode);
  j["scale"] = c.scale;
  j["base_bin"] = c.base_bin;
  j["stride"] = c.stride;
  j["mid_bin"] = c.mid_bin ? Json(*c.mid_bin) : Json(nullptr);
  j["swap"] = {{"origin_hz", c.swap.origin_hz},
               {"half_wavelength_x", c.swap.half_wavelength},
               {"stage_offsets", c.swap.stage_offsets},
               {"tau", c.swap.tau}};
  j["residual_limit"] = c.residual_limit;
  j["mos_n_const"] = c.metrics.mos_n_const;
  j["psnr_peak"] =
      c.metrics.psnr_peak == PsnrPeak::kReference ? "reference" : "full_scale";
  return j;
}

}  // namespace fragmark
