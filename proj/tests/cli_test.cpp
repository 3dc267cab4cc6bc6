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

// Drives the fragmark executable end to end.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr const char* kFox = "The quick brown fox jumps over the lazy dog";

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(FRAGMARK_CLI) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("fragmark_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const Outcome r = run("demo --seconds 1 --seed 3 -o " + (dir_ / "demo").string());
    ASSERT_EQ(r.code, 0) << r.out;
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string path(const std::string& name) { return (dir_ / name).string(); }
  static std::string song() { return path("demo/chirp_original.wav"); }

  static fs::path dir_;
};

fs::path CliTest::dir_;

TEST_F(CliTest, EmbedThenVerify) {
  Outcome r = run("embed -i " + song() + " -o " + path("e.wav") + " -m \"" + kFox + "\"");
  ASSERT_EQ(r.code, 0);
  const Json report = Json::parse(r.out);
  for (const char* key : {"command", "config", "input", "digest_expected",
                          "digest_extracted_primary", "digest_extracted_secondary",
                          "copies_agree", "match", "metrics"}) {
    EXPECT_TRUE(report.contains(key)) << key;
  }
  EXPECT_EQ(report["digest_expected"], "9e107d9d372bb6826bd81d3542a419d6");
  EXPECT_EQ(report["match"], true);
  EXPECT_EQ(report["config"]["mode"], "float");
  EXPECT_GT(report["metrics"]["snr_db"].get<double>(), 30.0);

  r = run("verify -i " + path("e.wav") + " -m \"" + kFox + "\" --reference " + song() +
          " -r " + path("verify.json"));
  EXPECT_EQ(r.code, 0);
  const Json v = Json::parse(slurp(path("verify.json")));
  EXPECT_EQ(v["match"], true);
  EXPECT_EQ(v["metrics"]["ber"], 0.0);

  r = run("verify -i " + path("e.wav") + " -m wrong");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["match"], false);
}

TEST_F(CliTest, SealUnsealRoundTripInPcm16) {
  ASSERT_EQ(run("embed --mode pcm16 -i " + song() + " -o " + path("p.wav")).code, 0);
  ASSERT_EQ(run("seal --mode pcm16 -i " + path("p.wav") + " -o " + path("ps.wav")).code, 0);
  const Outcome u = run("unseal --mode pcm16 -i " + path("ps.wav") + " -o " + path("pu.wav") +
                    " -m \"" + kFox + "\"");
  EXPECT_EQ(u.code, 0);
  EXPECT_EQ(Json::parse(u.out)["verification"]["intact"], true);
  const Outcome x = run("extract -i " + path("pu.wav") + " --mode pcm16");
  EXPECT_EQ(x.code, 0);
  EXPECT_EQ(Json::parse(x.out)["digest_extracted_secondary"],
            "9e107d9d372bb6826bd81d3542a419d6");
}

TEST_F(CliTest, MetricsTakesTwoInputs) {
  const Outcome r = run("metrics -i " + song() + " -i " + song());
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["metrics"]["mse"], 0.0);
  EXPECT_EQ(j["metrics"]["nc"], 1.0);
  EXPECT_EQ(j["metrics"]["snr_db"], "inf");
  EXPECT_EQ(j["metrics_per_channel"].size(), 2u);
  const Outcome silent = run("metrics -i " + path("demo/silence_bursts_original.wav") + " -i " +
                         path("demo/silence_bursts_embedded.wav") + " --channel 1");
  ASSERT_EQ(silent.code, 0);
  EXPECT_TRUE(Json::parse(silent.out)["metrics"]["snr_db"].is_null());
}

TEST_F(CliTest, UsageAndIoErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("embed -i " + song()).code, 2);  // no output
  EXPECT_EQ(run("verify -i " + path("missing.wav") + " -m x").code, 2);
  EXPECT_EQ(run("verify -i " + song() + " -m x --mode int8").code, 2);
  EXPECT_EQ(run("metrics -i " + song()).code, 2);
  std::ofstream(path("junk.wav")) << "not a wav";
  EXPECT_EQ(run("extract -i " + path("junk.wav")).code, 2);
  std::ofstream(path("bad.json")) << "{\"scale\": -1}";
  EXPECT_EQ(run("extract -i " + song() + " -c " + path("bad.json")).code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, ConfigFileIsHonouredAndEchoed) {
  std::ofstream(path("cfg.json")) << R"({"mode": "float", "scale": 2e-4, "swap": {"tau": 0.5}})";
  const Outcome r = run("embed -c " + path("cfg.json") + " -i " + song() + " -o " + path("c.wav"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["config"]["scale"], 2e-4);
  EXPECT_EQ(j["config"]["swap"]["tau"], 0.5);
  EXPECT_EQ(j["config"]["resolved"]["layout"]["mid_bin"], 150);
  // Wrong scale on read-back misreads the levels.
  EXPECT_EQ(run("verify -i " + path("c.wav") + " -m \"" + kFox + "\"").code, 1);
}

TEST_F(CliTest, DemoIsDeterministic) {
  const std::string second = path("demo2");
  const Outcome r = run("demo --seconds 1 --seed 3 -o " + second);
  ASSERT_EQ(r.code, 0);
  for (const char* name : {"tone_mixture_original.wav", "speech_shaped_noise_sealed.wav",
                           "silence_bursts_unsealed.wav"}) {
    EXPECT_EQ(slurp(dir_ / "demo" / name), slurp(fs::path(second) / name)) << name;
  }
  const Json a = Json::parse(slurp(dir_ / "demo" / "report.json"));
  EXPECT_EQ(a["table"].size(), 5u);
  for (const Json& row : a["table"]) EXPECT_EQ(row["ber"], 0.0);
}

}  // namespace
