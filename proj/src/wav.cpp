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

#include "fragmark/wav.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <system_error>

#include "fragmark/error.hpp"
#include "fragmark/quantize.hpp"

namespace fragmark {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
  }
}

void put_id(std::vector<std::uint8_t>& out, const char* id) {
  out.insert(out.end(), id, id + 4);
}

bool id_is(const std::uint8_t* p, const char* id) {
  return std::memcmp(p, id, 4) == 0;
}

[[noreturn]] void fail(ErrorCode code, const std::string& what) {
  throw Error(code, "wav: " + what);
}

struct FormatInfo {
  SampleFormat format;
  std::uint32_t sample_rate;
};

FormatInfo parse_fmt(const std::uint8_t* p, std::uint32_t size) {
  if (size < 16) fail(ErrorCode::kMalformedContainer, "fmt chunk too small");
  std::uint16_t tag = get_u16(p);
  const std::uint16_t channels = get_u16(p + 2);
  const std::uint32_t rate = get_u32(p + 4);
  const std::uint16_t block_align = get_u16(p + 12);
  const std::uint16_t bits = get_u16(p + 14);

  if (tag == kFormatExtensible) {
    if (size < 40) {
      fail(ErrorCode::kMalformedContainer, "extensible fmt chunk too small");
    }
    // First two bytes of the sub-format GUID carry the actual format tag.
    tag = get_u16(p + 24);
  }
  if (tag != kFormatPcm && tag != kFormatFloat) {
    fail(ErrorCode::kUnsupportedFormat,
         "audio format " + std::to_string(tag) + " is not PCM or IEEE float");
  }
  if (channels != 2) {
    fail(ErrorCode::kUnsupportedFormat,
         std::to_string(channels) + " channels; stereo required");
  }
  if (tag == kFormatPcm && bits != 16) {
    fail(ErrorCode::kUnsupportedFormat,
         std::to_string(bits) + "-bit PCM; 16-bit required");
  }
  if (tag == kFormatFloat && bits != 32) {
    fail(ErrorCode::kUnsupportedFormat,
         std::to_string(bits) + "-bit float; 32-bit required");
  }
  if (block_align != channels * bits / 8) {
    fail(ErrorCode::kMalformedContainer, "inconsistent block alignment");
  }
  if (rate == 0) fail(ErrorCode::kMalformedContainer, "zero sample rate");
  return {tag == kFormatPcm ? SampleFormat::kPcm16 : SampleFormat::kFloat32,
          rate};
}

}  // namespace

SampledSignal SampledSignal::with_channels(std::vector<double> left,
                                           std::vector<double> right) const {
  SampledSignal out;
  out.channels = {std::move(left), std::move(right)};
  out.sample_rate = sample_rate;
  out.source_format = source_format;
  out.leading_chunks = leading_chunks;
  out.trailing_chunks = trailing_chunks;
  return out;
}

void validate(const SampledSignal& signal) {
  if (signal.channels[0].size() != signal.channels[1].size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "signal: channel lengths differ");
  }
  if (signal.sample_rate == 0) {
    throw Error(ErrorCode::kInvalidArgument, "signal: sample rate is zero");
  }
}

std::int16_t to_pcm16(double amplitude) noexcept {
  constexpr double kMax = 1.0 - 1.0 / 32768.0;
  if (std::isnan(amplitude)) return 0;
  const double clamped = std::clamp(amplitude, -1.0, kMax);
  // std::round rounds halfway cases away from zero.
  return static_cast<std::int16_t>(std::round(clamped * 32768.0));
}

SampledSignal read_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !id_is(bytes.data(), "RIFF") ||
      !id_is(bytes.data() + 8, "WAVE")) {
    fail(ErrorCode::kMalformedContainer, "missing RIFF/WAVE header");
  }
  const std::uint64_t riff_end =
      std::min<std::uint64_t>(bytes.size(), std::uint64_t{get_u32(bytes.data() + 4)} + 8);

  std::optional<FormatInfo> format;
  const std::uint8_t* data = nullptr;
  std::uint32_t data_size = 0;
  SampledSignal signal;

  std::uint64_t pos = 12;
  while (pos < riff_end) {
    if (riff_end - pos < 8) {
      fail(ErrorCode::kMalformedContainer, "truncated chunk header");
    }
    const std::uint8_t* header = bytes.data() + pos;
    const std::uint32_t size = get_u32(header + 4);
    const std::uint64_t body = pos + 8;
    const bool is_data = id_is(header, "data");
    if (body + size > bytes.size()) {
      if (is_data && data == nullptr) {
        fail(ErrorCode::kTruncatedData,
             "data chunk declares " + std::to_string(size) + " bytes, " +
                 std::to_string(bytes.size() - body) + " present");
      }
      fail(ErrorCode::kMalformedContainer, "chunk overruns file");
    }

    if (id_is(header, "fmt ")) {
      if (!format) format = parse_fmt(bytes.data() + body, size);
    } else if (is_data) {
      if (data == nullptr) {
        data = bytes.data() + body;
        data_size = size;
      }
    } else {
      RawChunk chunk;
      std::memcpy(chunk.id.data(), header, 4);
      chunk.payload.assign(bytes.data() + body, bytes.data() + body + size);
      (data == nullptr ? signal.leading_chunks : signal.trailing_chunks)
          .push_back(std::move(chunk));
    }
    pos = body + size + (size & 1u);
  }

  if (!format) fail(ErrorCode::kMalformedContainer, "no fmt chunk");
  if (data == nullptr) fail(ErrorCode::kMalformedContainer, "no data chunk");

  const std::size_t frame_bytes =
      format->format == SampleFormat::kPcm16 ? 4 : 8;
  if (data_size % frame_bytes != 0) {
    fail(ErrorCode::kMalformedContainer, "data size is not a whole frame count");
  }
  const std::size_t frames = data_size / frame_bytes;
  signal.sample_rate = format->sample_rate;
  signal.source_format = format->format;
  for (auto& channel : signal.channels) channel.resize(frames);

  for (std::size_t i = 0; i < frames; ++i) {
    const std::uint8_t* frame = data + i * frame_bytes;
    for (std::size_t c = 0; c < 2; ++c) {
      double value;
      if (format->format == SampleFormat::kPcm16) {
        value = from_pcm16(static_cast<std::int16_t>(get_u16(frame + 2 * c)));
      } else {
        value = static_cast<double>(
            std::bit_cast<float>(get_u32(frame + 4 * c)));
        if (!std::isfinite(value)) {
          fail(ErrorCode::kMalformedContainer, "non-finite float sample");
        }
      }
      signal.channels[c][i] = value;
    }
  }
  return signal;
}

std::vector<std::uint8_t> write_wav(const SampledSignal& signal,
                                    SampleFormat format) {
  validate(signal);
  const bool pcm = format == SampleFormat::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint16_t block_align = 2 * bits / 8;
  const std::uint64_t data_size =
      std::uint64_t{signal.frames()} * block_align;

  std::uint64_t extra = 0;
  for (const auto* list : {&signal.leading_chunks, &signal.trailing_chunks}) {
    for (const RawChunk& chunk : *list) {
      extra += 8 + chunk.payload.size() + (chunk.payload.size() & 1u);
    }
  }
  const std::uint64_t riff_size = 4 + (8 + 16) + extra + 8 + data_size;
  if (riff_size > 0xFFFFFFFFull) {
    throw Error(ErrorCode::kInvalidArgument, "wav: signal exceeds 4 GiB");
  }

  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(riff_size + 8));
  put_id(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(riff_size));
  put_id(out, "WAVE");

  put_id(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, pcm ? kFormatPcm : kFormatFloat);
  put_u16(out, 2);
  put_u32(out, signal.sample_rate);
  put_u32(out, signal.sample_rate * block_align);
  put_u16(out, block_align);
  put_u16(out, bits);

  auto put_chunks = [&out](const std::vector<RawChunk>& chunks) {
    for (const RawChunk& chunk : chunks) {
      out.insert(out.end(), chunk.id.begin(), chunk.id.end());
      put_u32(out, static_cast<std::uint32_t>(chunk.payload.size()));
      out.insert(out.end(), chunk.payload.begin(), chunk.payload.end());
      if (chunk.payload.size() & 1u) out.push_back(0);
    }
  };
  put_chunks(signal.leading_chunks);

  put_id(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_size));
  std::array<std::vector<double>, 2> shaped;
  if (!pcm) {
    for (std::size_t c = 0; c < 2; ++c) shaped[c] = quantize_float32_shaped(signal.channels[c]);
  }
  for (std::size_t i = 0; i < signal.frames(); ++i) {
    for (std::size_t c = 0; c < 2; ++c) {
      if (pcm) {
        put_u16(out, static_cast<std::uint16_t>(to_pcm16(signal.channels[c][i])));
      } else {
        put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(shaped[c][i])));
      }
    }
  }
  put_chunks(signal.trailing_chunks);
  return out;
}

SampledSignal read_wav_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return read_wav(bytes);
}

void write_wav_file(const SampledSignal& signal, SampleFormat format,
                    const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = write_wav(signal, format);
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot create " + temp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed: " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw Error(ErrorCode::kIo, "cannot rename onto " + path.string());
  }
}

}  // namespace fragmark
