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

#include "fragmark/authenticator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "fragmark/error.hpp"
#include "fragmark/quantize.hpp"
#include "fragmark/spectral.hpp"
#include "oracles.hpp"

namespace fragmark {
namespace {

using spectral::Complex;

constexpr const char* kFox = "The quick brown fox jumps over the lazy dog";
constexpr std::size_t kOneSecond = 44100;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

// Rewrites bins of one channel, then resynthesizes.
SampledSignal edit_bins(const SampledSignal& s, std::size_t channel,
                        const std::vector<std::pair<std::size_t, Complex>>& delta) {
  auto bins = spectral::forward(s.channels[channel]);
  std::vector<std::size_t> touched;
  for (const auto& [k, d] : delta) {
    bins[k] += d;
    touched.push_back(k);
  }
  spectral::enforce_hermitian(bins, touched);
  SampledSignal out = s;
  out.channels[channel] = spectral::inverse(bins);
  return out;
}

TEST(LayoutTest, ProductionGeometry) {
  const EmbedLayout l = plan_layout(441000, 44100, kFloatScale);
  EXPECT_EQ(l.band_limit_bin, 3000u);
  EXPECT_EQ(l.mid_bin, 1500u);
  ASSERT_EQ(l.primary_bins.size(), 64u);
  ASSERT_EQ(l.secondary_bins.size(), 64u);
  for (std::size_t i = 0; i < 64; ++i) {
    EXPECT_EQ(l.primary_bins[i], 1 + 2 * i);
    EXPECT_EQ(l.secondary_bins[i], 1500 + 2 * i);
  }
  EXPECT_EQ(l.primary_bins.back(), 127u);
  EXPECT_EQ(l.secondary_bins.back(), 1626u);
}

TEST(LayoutTest, ShortSignalsAreRejected) {
  EXPECT_EQ(code_of([] { plan_layout(1000, 44100, kFloatScale); }),
            ErrorCode::kSignalTooShort);
  // 300 Hz holds 127 bins here, one short of a full stream.
  const std::size_t n127 = static_cast<std::size_t>(std::floor(127.49 * 44100 / 300));
  EXPECT_EQ(spectral::bin_for_hz(300, 44100, n127), 127u);
  EXPECT_EQ(code_of([&] { plan_layout(n127, 44100, kFloatScale); }),
            ErrorCode::kSignalTooShort);
}

TEST(LayoutTest, AcceptsExactlyWhenBothCopiesFitTheBand) {
  for (std::size_t n = 18000; n < 46000; n += 7) {
    const std::size_t band = spectral::bin_for_hz(300, 44100, n);
    const std::size_t mid = spectral::bin_for_hz(150, 44100, n);
    const bool fits = band >= 128 && mid + 126 <= band;
    const bool overlaps = mid % 2 == 1 && mid <= 127;
    if (fits && overlaps) {
      EXPECT_EQ(code_of([&] { plan_layout(n, 44100, kFloatScale); }),
                ErrorCode::kInvalidConfig)
          << n;
    } else if (fits) {
      EXPECT_NO_THROW(plan_layout(n, 44100, kFloatScale)) << n;
    } else {
      EXPECT_EQ(code_of([&] { plan_layout(n, 44100, kFloatScale); }),
                ErrorCode::kSignalTooShort)
          << n;
    }
  }
}

TEST(LayoutTest, OverlappingCopiesAreRejected) {
  Config c;
  c.mid_bin = 101;
  EXPECT_EQ(code_of([&] { plan_layout(441000, 44100, c); }), ErrorCode::kInvalidConfig);
  c.mid_bin = 128;  // even bins never meet the odd primary bins
  EXPECT_NO_THROW(plan_layout(441000, 44100, c));
}

// Brute-force enumeration of the stage pairs.
std::vector<std::pair<std::size_t, std::size_t>> enumerate_pairs(
    std::size_t n, std::size_t n0, std::size_t x, const std::vector<std::size_t>& offsets) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const std::size_t o : offsets) {
    for (std::size_t j = 0;; ++j) {
      const std::size_t a = n0 + o + 2 * j * x;
      const std::size_t b = n0 + o + (2 * j + 1) * x;
      if (2 * b >= n) break;
      out.emplace_back(a, b);
    }
  }
  return out;
}

TEST(ScheduleTest, MatchesEnumerationAndStaysBelowNyquist) {
  for (const std::size_t n : {441000u, 441001u, 44100u, 88200u, 96000u}) {
    const SwapSchedule s = plan_schedule(n, 44100, SwapSettings{});
    const std::size_t n0 = spectral::bin_for_hz(20000, 44100, n);
    EXPECT_EQ(s.origin_bin, n0);
    const auto pairs = s.transpositions();
    EXPECT_EQ(pairs, enumerate_pairs(n, n0, 10, {0, 3, 7})) << n;
    std::set<std::size_t> seen;
    for (const auto& [a, b] : pairs) {
      EXPECT_LT(2 * b, n);
      EXPECT_TRUE(seen.insert(a).second);
      EXPECT_TRUE(seen.insert(b).second);
    }
  }
  const SwapSchedule prod = plan_schedule(441000, 44100, SwapSettings{});
  EXPECT_EQ(prod.origin_bin, 200000u);
  EXPECT_EQ(prod.pair_counts, (std::vector<std::size_t>{1025, 1025, 1025}));
}

TEST(ScheduleTest, OverlapAndNyquistErrors) {
  EXPECT_EQ(code_of([] { make_schedule(1000, 100, 10, {0, 10}); }),
            ErrorCode::kScheduleOverlap);
  EXPECT_EQ(code_of([] { make_schedule(1000, 100, 10, {0, 20}); }),
            ErrorCode::kScheduleOverlap);
  EXPECT_NO_THROW(make_schedule(1000, 100, 10, {0, 3, 7}));
  EXPECT_EQ(code_of([] { plan_schedule(320000, 32000, SwapSettings{}); }),
            ErrorCode::kNyquistTooLow);
  EXPECT_EQ(code_of([] { plan_schedule(400000, 40000, SwapSettings{}); }),
            ErrorCode::kNyquistTooLow);
  EXPECT_NO_THROW(plan_schedule(480000, 48000, SwapSettings{}));
  SwapSettings low;
  low.origin_hz = 200;
  EXPECT_EQ(code_of([&] { plan_schedule(441000, 44100, low); }),
            ErrorCode::kInvalidConfig);
}

TEST(EmbedTest, CodedBinsCarryTheDigestAndNothingElseMoves) {
  std::mt19937_64 rng(1);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.3);
  const EmbedLayout layout = plan_layout(kOneSecond, 44100, kFloatScale);
  const SampledSignal e = embed_key(s, as_bytes(kFox), layout);
  const SymbolStream symbols = digest_to_pairs(md5(kFox));
  for (std::size_t c = 0; c < 2; ++c) {
    const auto before = spectral::forward(s.channels[c]);
    const auto after = spectral::forward(e.channels[c]);
    const auto& coded = c == 0 ? layout.primary_bins : layout.secondary_bins;
    std::set<std::size_t> coded_set;
    for (std::size_t i = 0; i < 64; ++i) {
      const std::size_t k = coded[i];
      coded_set.insert(k);
      coded_set.insert(kOneSecond - k);
      EXPECT_NEAR(after[k].real(), symbols[i] * kFloatScale, 1e-11);
      EXPECT_NEAR(after[k].imag(), 0.0, 1e-11);
    }
    double drift = 0.0;
    for (std::size_t k = 0; k < kOneSecond; ++k) {
      if (!coded_set.count(k)) drift = std::max(drift, std::abs(after[k] - before[k]));
    }
    EXPECT_LT(drift, 1e-10);
  }
  const ExtractedKey key = extract_key(e, layout);
  EXPECT_EQ(key.hex_primary, "9e107d9d372bb6826bd81d3542a419d6");
  EXPECT_TRUE(key.copies_agree);
}

TEST(EmbedTest, VerifyAcceptsRightMessageRejectsWrongOne) {
  std::mt19937_64 rng(2);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.3);
  const EmbedLayout layout = plan_layout(kOneSecond, 44100, kFloatScale);
  const SampledSignal e = embed_key(s, as_bytes(kFox), layout);
  const VerificationReport ok = verify(e, as_bytes(kFox), layout);
  EXPECT_TRUE(ok.match);
  EXPECT_TRUE(ok.intact);
  EXPECT_EQ(ok.ber, 0.0);
  EXPECT_LT(ok.max_bin_deviation, 1e-11);
  const VerificationReport bad = verify(e, as_bytes("wrong"), layout);
  EXPECT_FALSE(bad.match);
  EXPECT_TRUE(bad.intact);
  EXPECT_GT(bad.ber, 0.2);
  EXPECT_EQ(bad.extracted_hex_primary, ok.extracted_hex_primary);
}

TEST(EmbedTest, UnwatermarkedAudioDoesNotVerify) {
  std::mt19937_64 rng(3);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.3);
  const EmbedLayout layout = plan_layout(kOneSecond, 44100, kFloatScale);
  EXPECT_FALSE(verify(s, as_bytes(kFox), layout).match);
}

TEST(EmbedTest, GeometryMismatchIsAnError) {
  std::mt19937_64 rng(4);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.3);
  const EmbedLayout layout = plan_layout(2 * kOneSecond, 44100, kFloatScale);
  EXPECT_EQ(code_of([&] { embed_key(s, as_bytes(kFox), layout); }),
            ErrorCode::kInvalidArgument);
  const SwapSchedule schedule = plan_schedule(2 * kOneSecond, 44100, SwapSettings{});
  EXPECT_EQ(code_of([&] { seal(s, schedule); }), ErrorCode::kInvalidArgument);
}

// Symbol 3 of the fox digest pushed up by 2A: the decode clamps to the top
// level, so the bit error count depends only on the original symbol.
TEST(FragilityTest, TwoLevelPushOnOneSymbol) {
  std::mt19937_64 rng(5);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.3);
  const EmbedLayout layout = plan_layout(kOneSecond, 44100, kFloatScale);
  const SampledSignal e = embed_key(s, as_bytes(kFox), layout);
  const SymbolStream symbols = digest_to_pairs(md5(kFox));
  for (std::size_t idx = 0; idx < 64; ++idx) {
    const SampledSignal t =
        edit_bins(e, 0, {{layout.primary_bins[idx], Complex(2 * kFloatScale, 0)}});
    const VerificationReport r = verify(t, as_bytes(kFox), layout);
    EXPECT_FALSE(r.match) << idx;
    EXPECT_FALSE(r.copies_agree && r.intact) << idx;
    const double want = symbols[idx] == 3 ? 0.0 : 1.0 / 128.0;
    EXPECT_DOUBLE_EQ(r.ber, want) << idx;
  }
  EXPECT_EQ(symbols[3], 2);  // fox digest starts 0x9e = 10 01 11 10
}

TEST(FragilityTest, HalfStepFlipInAnyDirectionIsCaught) {
  std::mt19937_64 rng(6);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.3);
  const EmbedLayout layout = plan_layout(kOneSecond, 44100, kFloatScale);
  const SampledSignal e = embed_key(s, as_bytes(kFox), layout);
  const double step = kFloatScale / 2 + 1e-9;
  std::uniform_int_distribution<std::size_t> pick(0, 63);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t channel = trial % 2;
    const std::size_t idx = pick(rng);
    const std::size_t k =
        channel == 0 ? layout.primary_bins[idx] : layout.secondary_bins[idx];
    const SampledSignal t = edit_bins(e, channel, {{k, std::polar(step, angle(rng))}});
    const VerificationReport r = verify(t, as_bytes(kFox), layout);
    EXPECT_FALSE(r.match) << trial;
    EXPECT_GE(r.max_bin_deviation, kFloatScale / 2) << trial;
  }
}

TEST(FragilityTest, SmallDriftIsTolerated) {
  std::mt19937_64 rng(7);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.3);
  const EmbedLayout layout = plan_layout(kOneSecond, 44100, kFloatScale);
  const SampledSignal e = embed_key(s, as_bytes(kFox), layout);
  const SampledSignal t = edit_bins(e, 1, {{layout.secondary_bins[9], Complex(0.4 * kFloatScale, 0)}});
  EXPECT_TRUE(verify(t, as_bytes(kFox), layout).match);
}

TEST(SealTest, InvolutionAndScope) {
  std::mt19937_64 rng(8);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.5);
  const SwapSchedule schedule = plan_schedule(kOneSecond, 44100, SwapSettings{});
  const SampledSignal once = seal(s, schedule);
  const SampledSignal twice = unseal(once, schedule);
  double moved = 0.0;
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < s.frames(); ++i) {
      ASSERT_NEAR(twice.channels[c][i], s.channels[c][i], 1e-9);
      moved = std::max(moved, std::abs(once.channels[c][i] - s.channels[c][i]));
    }
  }
  EXPECT_GT(moved, 1e-3);

  const auto before = spectral::forward(s.channels[0]);
  const auto after = spectral::forward(once.channels[0]);
  std::vector<std::size_t> partner(kOneSecond / 2 + 1, 0);
  for (const auto& [a, b] : schedule.transpositions()) {
    partner[a] = b;
    partner[b] = a;
  }
  for (std::size_t k = 0; k <= kOneSecond / 2; ++k) {
    const Complex want = partner[k] ? before[partner[k]] : before[k];
    ASSERT_LT(std::abs(after[k] - want), 1e-9) << k;
  }
}

TEST(SealTest, SilenceStaysSilent) {
  SampledSignal s;
  s.channels[0].assign(kOneSecond, 0.0);
  s.channels[1].assign(kOneSecond, 0.0);
  const SampledSignal out = seal(s, plan_schedule(kOneSecond, 44100, SwapSettings{}));
  EXPECT_EQ(out.channels, s.channels);
}

TEST(SealTest, WatermarkSurvivesSealing) {
  std::mt19937_64 rng(9);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.3);
  const Config config;
  const SampledSignal sealed = seal(embed(s, as_bytes(kFox), config), config);
  EXPECT_TRUE(verify(unseal(sealed, config), as_bytes(kFox), config).match);
}

TEST(Pcm16Test, PipelineStaysOnGridAndVerifies) {
  std::mt19937_64 rng(10);
  const SampledSignal s = quantize_pcm16(oracle::random_signal(rng, kOneSecond, 0.3));
  const Config config = Config::defaults(Mode::kPcm16);
  const SampledSignal e = embed(s, as_bytes(kFox), config);
  const SampledSignal sealed = seal(e, config);
  const SampledSignal u = unseal(sealed, config);
  for (const auto* sig : {&e, &sealed, &u}) {
    for (const auto& ch : sig->channels) {
      for (const double v : ch) ASSERT_EQ(v, std::round(v * 32768.0) / 32768.0);
    }
  }
  const VerificationReport r = verify(u, as_bytes(kFox), config);
  EXPECT_TRUE(r.match);
  ASSERT_TRUE(r.residual_ratio.has_value());
  EXPECT_LT(*r.residual_ratio, config.residual_limit);
  EXPECT_EQ(r.ber, 0.0);
  const SampledSignal twice = seal(sealed, config);
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < s.frames(); ++i) {
      ASSERT_LE(std::abs(twice.channels[c][i] - e.channels[c][i]), 2.0 / 65536.0);
    }
  }
}

TEST(Pcm16Test, SingleSampleTamperIsCaught) {
  std::mt19937_64 rng(11);
  const SampledSignal s = quantize_pcm16(oracle::random_signal(rng, kOneSecond, 0.3));
  const Config config = Config::defaults(Mode::kPcm16);
  const SampledSignal e = embed(s, as_bytes(kFox), config);
  std::uniform_int_distribution<std::size_t> where(0, kOneSecond - 1);
  for (int trial = 0; trial < 20; ++trial) {
    SampledSignal t = e;
    t.channels[trial % 2][where(rng)] += trial % 4 < 2 ? 0.01 : -0.01;
    t = quantize_pcm16(t);
    const VerificationReport r = verify(t, as_bytes(kFox), config);
    EXPECT_FALSE(r.match) << trial;
    EXPECT_GT(*r.residual_ratio, config.residual_limit) << trial;
  }
}

TEST(ReportTest, JsonShape) {
  std::mt19937_64 rng(12);
  const SampledSignal s = oracle::random_signal(rng, kOneSecond, 0.3);
  const Config config;
  const VerificationReport r =
      verify(embed(s, as_bytes(kFox), config), as_bytes(kFox), config);
  const auto j = to_json(r);
  for (const char* key : {"expected_hex", "extracted_hex_primary", "extracted_hex_secondary",
                          "copies_agree", "intact", "match", "ber", "max_bin_deviation",
                          "residual_ratio"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["residual_ratio"].is_null());
  const auto eff = effective_config(config, kOneSecond, 44100);
  EXPECT_EQ(eff["mid_bin"], 150);
  EXPECT_EQ(eff["resolved"]["schedule"]["origin_bin"], 20000);
  const auto short_eff = effective_config(config, 1000, 44100);
  EXPECT_TRUE(short_eff["resolved"]["layout"].contains("error"));
}

}  // namespace
}  // namespace fragmark
