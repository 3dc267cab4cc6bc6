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

#include "fragmark/fragmark.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "fragmark/authenticator.hpp"
#include "fragmark/config.hpp"
#include "fragmark/corpus.hpp"
#include "fragmark/digest.hpp"
#include "fragmark/error.hpp"
#include "fragmark/metrics.hpp"
#include "fragmark/wav.hpp"

struct fragmark_signal {
  fragmark::SampledSignal value;
};

struct fragmark_config {
  fragmark::Config value;
};

namespace {

thread_local std::string g_last_error;

fragmark_status fail(fragmark_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, mapping exceptions onto status codes.
template <typename F>
fragmark_status guarded(F&& body) {
  try {
    body();
    return FRAGMARK_OK;
  } catch (const fragmark::Error& e) {
    return fail(static_cast<fragmark_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FRAGMARK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FRAGMARK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FRAGMARK_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw fragmark::Error(fragmark::ErrorCode::kInvalidArgument, what);
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void copy_hex(char dest[33], const std::string& hex) {
  std::memset(dest, 0, 33);
  std::memcpy(dest, hex.data(), std::min<std::size_t>(hex.size(), 32));
}

std::span<const std::uint8_t> message_span(const uint8_t* message, size_t size) {
  require(message != nullptr || size == 0, "message is null");
  return {message, size};
}

fragmark::SampleFormat to_format(fragmark_sample_format f) {
  switch (f) {
    case FRAGMARK_FORMAT_PCM16: return fragmark::SampleFormat::kPcm16;
    case FRAGMARK_FORMAT_FLOAT32: return fragmark::SampleFormat::kFloat32;
  }
  throw fragmark::Error(fragmark::ErrorCode::kInvalidArgument,
                        "unknown sample format");
}

fragmark::Mode to_mode(int mode) {
  if (mode == FRAGMARK_MODE_FLOAT) return fragmark::Mode::kFloat;
  if (mode == FRAGMARK_MODE_PCM16) return fragmark::Mode::kPcm16;
  throw fragmark::Error(fragmark::ErrorCode::kInvalidArgument, "unknown mode");
}

void emit(fragmark::SampledSignal signal, fragmark_signal** out) {
  *out = new fragmark_signal{std::move(signal)};
}

const fragmark::Config& config_or_default(const fragmark_config* config) {
  static const fragmark::Config kDefault;
  return config ? config->value : kDefault;
}

fragmark::DistortionReport compute(const fragmark_signal* original,
                                   const fragmark_signal* modified,
                                   const fragmark_config* config, int channel) {
  require(original && modified, "signal is null");
  const auto& options = config_or_default(config).metrics;
  if (channel == -1) {
    return fragmark::distortion(original->value, modified->value, options);
  }
  require(channel == 0 || channel == 1, "channel must be -1, 0 or 1");
  return fragmark::distortion_per_channel(original->value, modified->value,
                                          options)[static_cast<std::size_t>(channel)];
}

}  // namespace

extern "C" {

const char* fragmark_version(void) { return "1.0.0"; }

const char* fragmark_status_name(fragmark_status status) {
  if (status == FRAGMARK_OK) return "Ok";
  if (status == FRAGMARK_ERR_INTERNAL) return "Internal";
  if (status >= 1 && status <= 15) {
    return fragmark::error_code_name(static_cast<fragmark::ErrorCode>(status)).data();
  }
  return "Unknown";
}

const char* fragmark_last_error(void) { return g_last_error.c_str(); }

void fragmark_free(void* buffer) { std::free(buffer); }

fragmark_status fragmark_signal_create(uint32_t sample_rate, size_t frames,
                                       const double* left, const double* right,
                                       fragmark_signal** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(frames == 0 || (left && right), "channel data is null");
    fragmark::SampledSignal s;
    s.sample_rate = sample_rate;
    s.channels[0].assign(left, left + frames);
    s.channels[1].assign(right, right + frames);
    fragmark::validate(s);
    emit(std::move(s), out);
  });
}

fragmark_status fragmark_signal_read_file(const char* path, fragmark_signal** out) {
  return guarded([&] {
    require(path && out, "null argument");
    emit(fragmark::read_wav_file(path), out);
  });
}

fragmark_status fragmark_signal_read_memory(const uint8_t* bytes, size_t size,
                                            fragmark_signal** out) {
  return guarded([&] {
    require((bytes || size == 0) && out, "null argument");
    emit(fragmark::read_wav({bytes, size}), out);
  });
}

fragmark_status fragmark_signal_write_file(const fragmark_signal* signal,
                                           fragmark_sample_format format,
                                           const char* path) {
  return guarded([&] {
    require(signal && path, "null argument");
    fragmark::write_wav_file(signal->value, to_format(format), path);
  });
}

fragmark_status fragmark_signal_write_memory(const fragmark_signal* signal,
                                             fragmark_sample_format format,
                                             uint8_t** bytes, size_t* size) {
  return guarded([&] {
    require(signal && bytes && size, "null argument");
    const auto data = fragmark::write_wav(signal->value, to_format(format));
    auto* buffer = static_cast<uint8_t*>(std::malloc(data.size()));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, data.data(), data.size());
    *bytes = buffer;
    *size = data.size();
  });
}

size_t fragmark_signal_frames(const fragmark_signal* signal) {
  return signal ? signal->value.frames() : 0;
}

uint32_t fragmark_signal_sample_rate(const fragmark_signal* signal) {
  return signal ? signal->value.sample_rate : 0;
}

fragmark_status fragmark_signal_channel(const fragmark_signal* signal,
                                        int channel, double* out,
                                        size_t capacity) {
  return guarded([&] {
    require(signal != nullptr, "signal is null");
    require(channel == 0 || channel == 1, "channel must be 0 or 1");
    require(out || capacity == 0, "out is null");
    const auto& samples = signal->value.channels[static_cast<std::size_t>(channel)];
    const size_t n = std::min(capacity, samples.size());
    std::copy_n(samples.begin(), n, out);
  });
}

void fragmark_signal_free(fragmark_signal* signal) { delete signal; }

fragmark_status fragmark_config_default(fragmark_mode mode, fragmark_config** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = new fragmark_config{fragmark::Config::defaults(to_mode(mode))};
  });
}

fragmark_status fragmark_config_parse(const char* json, int mode_override,
                                      fragmark_config** out) {
  return guarded([&] {
    require(json && out, "null argument");
    std::optional<fragmark::Mode> mode;
    if (mode_override != -1) mode = to_mode(mode_override);
    *out = new fragmark_config{fragmark::parse_config(json, mode)};
  });
}

fragmark_mode fragmark_config_mode(const fragmark_config* config) {
  return config && config->value.mode == fragmark::Mode::kPcm16
             ? FRAGMARK_MODE_PCM16
             : FRAGMARK_MODE_FLOAT;
}

fragmark_status fragmark_config_to_json(const fragmark_config* config,
                                        const fragmark_signal* signal,
                                        char** json) {
  return guarded([&] {
    require(config && json, "null argument");
    const auto doc =
        signal ? fragmark::effective_config(config->value, signal->value.frames(),
                                            signal->value.sample_rate)
               : fragmark::to_json(config->value);
    *json = copy_string(doc.dump(2));
  });
}

void fragmark_config_free(fragmark_config* config) { delete config; }

void fragmark_md5(const uint8_t* data, size_t size, uint8_t digest[16]) {
  const auto d = fragmark::md5(std::span<const std::uint8_t>(data, data ? size : 0));
  std::memcpy(digest, d.data(), d.size());
}

void fragmark_md5_hex(const uint8_t* data, size_t size, char hex[33]) {
  copy_hex(hex, fragmark::to_hex(
                    fragmark::md5(std::span<const std::uint8_t>(data, data ? size : 0))));
}

fragmark_status fragmark_embed(const fragmark_signal* signal,
                               const uint8_t* message, size_t message_size,
                               const fragmark_config* config,
                               fragmark_signal** out) {
  return guarded([&] {
    require(signal && out, "null argument");
    emit(fragmark::embed(signal->value, message_span(message, message_size),
                         config_or_default(config)),
         out);
  });
}

fragmark_status fragmark_seal(const fragmark_signal* signal,
                              const fragmark_config* config,
                              fragmark_signal** out) {
  return guarded([&] {
    require(signal && out, "null argument");
    emit(fragmark::seal(signal->value, config_or_default(config)), out);
  });
}

fragmark_status fragmark_unseal(const fragmark_signal* signal,
                                const fragmark_config* config,
                                fragmark_signal** out) {
  return guarded([&] {
    require(signal && out, "null argument");
    emit(fragmark::unseal(signal->value, config_or_default(config)), out);
  });
}

fragmark_status fragmark_extract(const fragmark_signal* signal,
                                 const fragmark_config* config,
                                 fragmark_extracted_key* out) {
  return guarded([&] {
    require(signal && out, "null argument");
    const auto key = fragmark::extract_key(signal->value, config_or_default(config));
    copy_hex(out->primary_hex, key.hex_primary);
    copy_hex(out->secondary_hex, key.hex_secondary);
    out->copies_agree = key.copies_agree ? 1 : 0;
  });
}

fragmark_status fragmark_verify(const fragmark_signal* signal,
                                const uint8_t* message, size_t message_size,
                                const fragmark_config* config,
                                fragmark_verification* out) {
  return guarded([&] {
    require(signal && out, "null argument");
    const auto r = fragmark::verify(signal->value,
                                    message_span(message, message_size),
                                    config_or_default(config));
    copy_hex(out->expected_hex, r.expected_hex);
    copy_hex(out->primary_hex, r.extracted_hex_primary);
    copy_hex(out->secondary_hex, r.extracted_hex_secondary);
    out->copies_agree = r.copies_agree ? 1 : 0;
    out->intact = r.intact ? 1 : 0;
    out->match = r.match ? 1 : 0;
    out->ber = r.ber;
    out->max_bin_deviation = r.max_bin_deviation;
    out->residual_ratio =
        r.residual_ratio.value_or(std::numeric_limits<double>::quiet_NaN());
  });
}

fragmark_status fragmark_distortion_compute(const fragmark_signal* original,
                                            const fragmark_signal* modified,
                                            const fragmark_config* config,
                                            int channel,
                                            fragmark_distortion* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    const auto r = compute(original, modified, config, channel);
    fragmark_distortion d{};
    d.md = r.md;
    d.ad = r.ad;
    d.mse = r.mse;
    const auto put = [&d](double& field, const std::optional<double>& v,
                          unsigned bit) {
      field = v.value_or(std::numeric_limits<double>::quiet_NaN());
      if (v) d.defined |= bit;
    };
    put(d.nad, r.nad, FRAGMARK_METRIC_NAD);
    put(d.nmse, r.nmse, FRAGMARK_METRIC_NMSE);
    put(d.snr_db, r.snr_db, FRAGMARK_METRIC_SNR);
    put(d.psnr_db, r.psnr_db, FRAGMARK_METRIC_PSNR);
    put(d.nc, r.nc, FRAGMARK_METRIC_NC);
    put(d.qc, r.qc, FRAGMARK_METRIC_QC);
    put(d.ber, r.ber, FRAGMARK_METRIC_BER);
    put(d.mos, r.mos, FRAGMARK_METRIC_MOS);
    *out = d;
  });
}

fragmark_status fragmark_distortion_json(const fragmark_signal* original,
                                         const fragmark_signal* modified,
                                         const fragmark_config* config,
                                         int channel, double ber, char** json) {
  return guarded([&] {
    require(json != nullptr, "json is null");
    auto r = compute(original, modified, config, channel);
    if (!std::isnan(ber)) r.ber = ber;
    *json = copy_string(fragmark::to_json(r).dump(2));
  });
}

fragmark_status fragmark_mos(double snr_db, double n_const, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = fragmark::mos(snr_db, n_const);
  });
}

const char* fragmark_rating_label(double mos) {
  return fragmark::rating_label(mos).data();
}

size_t fragmark_demo_song_count(void) { return fragmark::kDemoSongCount; }

const char* fragmark_demo_song_name(size_t index) {
  if (index >= fragmark::kDemoSongCount) return nullptr;
  return fragmark::demo_song_name(index).data();
}

fragmark_status fragmark_demo_song(size_t index, uint64_t seed, double seconds,
                                   uint32_t sample_rate, fragmark_signal** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    emit(fragmark::synthesize_demo_song(index, seed, seconds, sample_rate), out);
  });
}

}  // extern "C"
