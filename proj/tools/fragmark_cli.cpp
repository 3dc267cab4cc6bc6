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

// fragmark command-line tool. Talks to the library only through fragmark.h.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fragmark/fragmark.h"

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

constexpr const char* kDefaultMessage =
    "The quick brown fox jumps over the lazy dog";

struct Failure {
  std::string message;
};

void check(fragmark_status status, const std::string& context) {
  if (status != FRAGMARK_OK) {
    throw Failure{context + ": " + fragmark_status_name(status) + ": " +
                  fragmark_last_error()};
  }
}

struct SignalDeleter {
  void operator()(fragmark_signal* s) const { fragmark_signal_free(s); }
};
struct ConfigDeleter {
  void operator()(fragmark_config* c) const { fragmark_config_free(c); }
};
using Signal = std::unique_ptr<fragmark_signal, SignalDeleter>;
using Config = std::unique_ptr<fragmark_config, ConfigDeleter>;

Json take_json(char* text) {
  Json j = Json::parse(text);
  fragmark_free(text);
  return j;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{"cannot write " + tmp.string()};
    out << text;
    if (!out.flush()) throw Failure{"cannot write " + tmp.string()};
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Failure{"cannot rename " + tmp.string() + ": " + ec.message()};
}

Signal load(const std::string& path) {
  fragmark_signal* s = nullptr;
  check(fragmark_signal_read_file(path.c_str(), &s), "reading " + path);
  return Signal(s);
}

// Options shared by every subcommand.
struct Common {
  std::string config_path;
  std::string mode;
  std::string report_path;
  std::string message;
  std::string message_file;
  bool have_message = false;

  Config config() const {
    int override_mode = -1;
    if (mode == "float") override_mode = FRAGMARK_MODE_FLOAT;
    if (mode == "pcm16") override_mode = FRAGMARK_MODE_PCM16;
    fragmark_config* c = nullptr;
    const std::string json = config_path.empty() ? "{}" : read_text(config_path);
    check(fragmark_config_parse(json.c_str(), override_mode, &c), "config");
    return Config(c);
  }

  std::optional<std::string> claimed() const {
    if (!message_file.empty()) return read_text(message_file);
    if (have_message) return message;
    return std::nullopt;
  }
};

fragmark_sample_format output_format(const fragmark_config* config) {
  return fragmark_config_mode(config) == FRAGMARK_MODE_PCM16
             ? FRAGMARK_FORMAT_PCM16
             : FRAGMARK_FORMAT_FLOAT32;
}

void save(const fragmark_signal* signal, const fragmark_config* config,
          const std::string& path) {
  check(fragmark_signal_write_file(signal, output_format(config), path.c_str()),
        "writing " + path);
}

std::string md5_hex(const std::string& message) {
  char hex[33];
  fragmark_md5_hex(reinterpret_cast<const uint8_t*>(message.data()),
                   message.size(), hex);
  return hex;
}

fragmark_verification verify(const fragmark_signal* signal,
                             const std::string& message,
                             const fragmark_config* config) {
  fragmark_verification v{};
  check(fragmark_verify(signal, reinterpret_cast<const uint8_t*>(message.data()),
                        message.size(), config, &v),
        "verify");
  return v;
}

Json metrics_json(const fragmark_signal* original, const fragmark_signal* modified,
                  const fragmark_config* config, int channel,
                  double ber = std::nan("")) {
  char* text = nullptr;
  check(fragmark_distortion_json(original, modified, config, channel, ber, &text),
        "metrics");
  return take_json(text);
}

Json verification_json(const fragmark_verification& v) {
  Json j;
  j["intact"] = static_cast<bool>(v.intact);
  j["ber"] = v.ber;
  j["max_bin_deviation"] = v.max_bin_deviation;
  j["residual_ratio"] =
      std::isnan(v.residual_ratio) ? Json(nullptr) : Json(v.residual_ratio);
  return j;
}

Json base_report(const std::string& command, const fragmark_config* config,
                 const fragmark_signal* geometry, const Json& input) {
  char* text = nullptr;
  check(fragmark_config_to_json(config, geometry, &text), "config");
  Json r;
  r["command"] = command;
  r["config"] = take_json(text);
  r["input"] = input;
  r["digest_expected"] = nullptr;
  r["digest_extracted_primary"] = nullptr;
  r["digest_extracted_secondary"] = nullptr;
  r["copies_agree"] = nullptr;
  r["match"] = nullptr;
  r["metrics"] = nullptr;
  return r;
}

void fill_verification(Json& r, const fragmark_verification& v) {
  r["digest_expected"] = v.expected_hex;
  r["digest_extracted_primary"] = v.primary_hex;
  r["digest_extracted_secondary"] = v.secondary_hex;
  r["copies_agree"] = static_cast<bool>(v.copies_agree);
  r["match"] = static_cast<bool>(v.match);
  r["verification"] = verification_json(v);
}

void publish(const Json& report, const Common& common) {
  const std::string text = report.dump(2);
  std::cout << text << "\n";
  if (!common.report_path.empty()) write_text_atomic(common.report_path, text + "\n");
}

int run_embed(const Common& common, const std::string& in, const std::string& out) {
  const Config config = common.config();
  const std::string message = common.claimed().value_or(kDefaultMessage);
  const Signal original = load(in);
  fragmark_signal* raw = nullptr;
  check(fragmark_embed(original.get(), reinterpret_cast<const uint8_t*>(message.data()),
                       message.size(), config.get(), &raw),
        "embed");
  const Signal embedded(raw);
  save(embedded.get(), config.get(), out);

  const Signal written = load(out);
  const fragmark_verification v = verify(written.get(), message, config.get());
  Json r = base_report("embed", config.get(), original.get(), in);
  r["output"] = out;
  fill_verification(r, v);
  r["metrics"] = metrics_json(original.get(), written.get(), config.get(), -1, v.ber);
  publish(r, common);
  return v.match ? kExitOk : kExitMismatch;
}

int run_swap(const Common& common, const std::string& command,
             const std::string& in, const std::string& out) {
  const Config config = common.config();
  const Signal input = load(in);
  fragmark_signal* raw = nullptr;
  if (command == "seal") {
    check(fragmark_seal(input.get(), config.get(), &raw), command);
  } else {
    check(fragmark_unseal(input.get(), config.get(), &raw), command);
  }
  const Signal result(raw);
  save(result.get(), config.get(), out);

  Json r = base_report(command, config.get(), input.get(), in);
  r["output"] = out;
  int code = kExitOk;
  if (const auto message = common.claimed()) {
    const Signal written = load(out);
    const fragmark_verification v = verify(written.get(), *message, config.get());
    fill_verification(r, v);
    if (command == "unseal" && !v.match) code = kExitMismatch;
  }
  r["metrics"] = metrics_json(input.get(), result.get(), config.get(), -1);
  publish(r, common);
  return code;
}

int run_extract(const Common& common, const std::string& in) {
  const Config config = common.config();
  const Signal input = load(in);
  fragmark_extracted_key key{};
  check(fragmark_extract(input.get(), config.get(), &key), "extract");
  Json r = base_report("extract", config.get(), input.get(), in);
  r["digest_extracted_primary"] = key.primary_hex;
  r["digest_extracted_secondary"] = key.secondary_hex;
  r["copies_agree"] = static_cast<bool>(key.copies_agree);
  int code = kExitOk;
  if (const auto message = common.claimed()) {
    const fragmark_verification v = verify(input.get(), *message, config.get());
    fill_verification(r, v);
    if (!v.match) code = kExitMismatch;
  }
  publish(r, common);
  return code;
}

int run_verify(const Common& common, const std::string& in,
               const std::string& reference) {
  const Config config = common.config();
  const auto message = common.claimed();
  if (!message) throw Failure{"verify needs --message or --message-file"};
  const Signal input = load(in);
  const fragmark_verification v = verify(input.get(), *message, config.get());
  Json r = base_report("verify", config.get(), input.get(), in);
  fill_verification(r, v);
  if (!reference.empty()) {
    const Signal ref = load(reference);
    r["reference"] = reference;
    r["metrics"] = metrics_json(ref.get(), input.get(), config.get(), -1, v.ber);
  }
  publish(r, common);
  return v.match ? kExitOk : kExitMismatch;
}

int run_metrics(const Common& common, const std::vector<std::string>& inputs,
                int channel) {
  const Config config = common.config();
  const Signal original = load(inputs[0]);
  const Signal modified = load(inputs[1]);
  Json r = base_report("metrics", config.get(), original.get(), inputs);
  r["metrics"] = metrics_json(original.get(), modified.get(), config.get(), channel);
  if (channel == -1) {
    r["metrics_per_channel"] = {
        metrics_json(original.get(), modified.get(), config.get(), 0),
        metrics_json(original.get(), modified.get(), config.get(), 1)};
  }
  publish(r, common);
  return kExitOk;
}

std::string cell(const Json& v, int precision) {
  if (v.is_null()) return "n/a";
  if (v.is_string()) return v.get<std::string>();
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(precision);
  ss << v.get<double>();
  return ss.str();
}

std::string sci(const Json& v) {
  if (v.is_null()) return "n/a";
  if (v.is_string()) return v.get<std::string>();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v.get<double>());
  return buf;
}

int run_demo(const Common& common, const std::string& out_dir,
             std::uint64_t seed, double seconds) {
  const Config config = common.config();
  const std::string message = common.claimed().value_or(kDefaultMessage);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Failure{"cannot create " + out_dir + ": " + ec.message()};

  Json songs = Json::array();
  Json table = Json::array();
  bool all_match = true;
  Json config_json;
  const std::size_t count = fragmark_demo_song_count();
  for (std::size_t i = 0; i < count; ++i) {
    const std::string name = fragmark_demo_song_name(i);
    fragmark_signal* raw = nullptr;
    check(fragmark_demo_song(i, seed, seconds, 44100, &raw), "demo song " + name);
    Signal original(raw);
    const auto path = [&](const char* stage) {
      return (fs::path(out_dir) / (name + "_" + stage + ".wav")).string();
    };
    save(original.get(), config.get(), path("original"));
    original = load(path("original"));  // what a user of the files would see

    check(fragmark_embed(original.get(), reinterpret_cast<const uint8_t*>(message.data()),
                         message.size(), config.get(), &raw),
          "embed " + name);
    save(Signal(raw).get(), config.get(), path("embedded"));
    const Signal embedded = load(path("embedded"));

    check(fragmark_seal(embedded.get(), config.get(), &raw), "seal " + name);
    save(Signal(raw).get(), config.get(), path("sealed"));
    const Signal sealed = load(path("sealed"));

    check(fragmark_unseal(sealed.get(), config.get(), &raw), "unseal " + name);
    save(Signal(raw).get(), config.get(), path("unsealed"));
    const Signal unsealed = load(path("unsealed"));

    const fragmark_verification v = verify(unsealed.get(), message, config.get());
    const fragmark_verification sealed_v = verify(sealed.get(), message, config.get());
    all_match = all_match && v.match;
    if (config_json.is_null()) {
      char* text = nullptr;
      check(fragmark_config_to_json(config.get(), original.get(), &text), "config");
      config_json = take_json(text);
    }

    Json song;
    song["name"] = name;
    song["files"] = {{"original", path("original")},
                     {"embedded", path("embedded")},
                     {"sealed", path("sealed")},
                     {"unsealed", path("unsealed")}};
    fill_verification(song, v);
    song["sealed_match"] = static_cast<bool>(sealed_v.match);
    song["metrics"] =
        metrics_json(original.get(), embedded.get(), config.get(), -1, v.ber);
    song["metrics_per_channel"] = {
        metrics_json(original.get(), embedded.get(), config.get(), 0),
        metrics_json(original.get(), embedded.get(), config.get(), 1)};
    song["sealed_metrics"] =
        metrics_json(original.get(), sealed.get(), config.get(), -1);
    const Json& m = song["metrics"];

    Json row;
    row["song"] = name;
    for (const char* key : {"snr_db", "psnr_db", "mse", "nmse", "md", "ad", "nad",
                            "nc", "qc", "ber", "mos"}) {
      row[key] = m[key];
    }
    row["rating"] = m["mos"].is_number()
                        ? Json(fragmark_rating_label(m["mos"].get<double>()))
                        : Json(nullptr);
    row["match"] = static_cast<bool>(v.match);
    table.push_back(row);
    songs.push_back(song);
  }

  Json r;
  r["command"] = "demo";
  r["config"] = config_json;
  r["input"] = {{"seed", seed}, {"seconds", seconds}, {"sample_rate", 44100}};
  r["digest_expected"] = md5_hex(message);
  r["match"] = all_match;
  r["songs"] = songs;
  r["table"] = table;
  const std::string report_path = common.report_path.empty()
                                      ? (fs::path(out_dir) / "report.json").string()
                                      : common.report_path;
  write_text_atomic(report_path, r.dump(2) + "\n");

  std::printf("%-20s %8s %8s %10s %10s %10s %10s %10s %9s %9s %6s %6s  %s\n", "song",
              "SNR", "PSNR", "MSE", "NMSE", "MD", "AD", "NAD", "NC", "QC", "BER",
              "MOS", "match");
  for (const Json& row : table) {
    std::printf("%-20s %8s %8s %10s %10s %10s %10s %10s %9s %9s %6s %6s  %s\n",
                row["song"].get<std::string>().c_str(), cell(row["snr_db"], 2).c_str(),
                cell(row["psnr_db"], 2).c_str(), sci(row["mse"]).c_str(),
                sci(row["nmse"]).c_str(), sci(row["md"]).c_str(),
                sci(row["ad"]).c_str(), sci(row["nad"]).c_str(),
                cell(row["nc"], 6).c_str(), cell(row["qc"], 6).c_str(),
                cell(row["ber"], 3).c_str(), cell(row["mos"], 3).c_str(),
                row["match"].get<bool>() ? "yes" : "NO");
  }
  std::printf("report: %s\n", report_path.c_str());
  return all_match ? kExitOk : kExitMismatch;
}

void add_common(CLI::App* cmd, Common& common, bool message_option) {
  cmd->add_option("-c,--config", common.config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--mode", common.mode, "float or pcm16 (overrides config)")
      ->check(CLI::IsMember({"float", "pcm16"}));
  cmd->add_option("-r,--report", common.report_path, "also write the JSON report here");
  if (message_option) {
    cmd->add_option("-m,--message", common.message, "message text");
    cmd->add_option("--message-file", common.message_file, "read the message from a file")
        ->check(CLI::ExistingFile);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fragmark: fragile audio watermarking"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fragmark_version());

  Common common;
  std::string in, out, reference;
  std::vector<std::string> inputs;
  int channel = -1;
  std::uint64_t seed = 2024;
  double seconds = 10.0;
  std::string out_dir = "demo_out";

  auto* embed = app.add_subcommand("embed", "embed md5(message) into a WAV file");
  auto* seal = app.add_subcommand("seal", "apply the ultrasonic swap schedule");
  auto* unseal = app.add_subcommand("unseal", "undo seal (the same involution)");
  auto* extract = app.add_subcommand("extract", "read the embedded digest");
  auto* verify_cmd = app.add_subcommand("verify", "check a file against a message");
  auto* metrics = app.add_subcommand("metrics", "distortion between two files");
  auto* demo = app.add_subcommand("demo", "run the pipeline on the synthetic corpus");

  for (auto* cmd : {embed, seal, unseal}) {
    add_common(cmd, common, true);
    cmd->add_option("-i,--input", in, "input WAV")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", out, "output WAV")->required();
  }
  for (auto* cmd : {extract, verify_cmd}) {
    add_common(cmd, common, true);
    cmd->add_option("-i,--input", in, "input WAV")->required()->check(CLI::ExistingFile);
  }
  verify_cmd->add_option("--reference", reference, "original WAV for distortion metrics")
      ->check(CLI::ExistingFile);
  add_common(metrics, common, false);
  metrics->add_option("-i,--input", inputs, "original, then modified")
      ->required()
      ->expected(2)
      ->check(CLI::ExistingFile);
  metrics->add_option("--channel", channel, "-1 interleaved (default), 0 or 1")
      ->check(CLI::Range(-1, 1));
  add_common(demo, common, true);
  demo->add_option("-o,--out-dir", out_dir, "directory for fixtures and report");
  demo->add_option("--seed", seed, "corpus seed");
  demo->add_option("--seconds", seconds, "song length")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  for (auto* cmd : {embed, seal, unseal, extract, verify_cmd, demo}) {
    if (cmd->parsed()) {
      const auto* m = cmd->get_option_no_throw("--message");
      common.have_message = m && m->count() > 0;
    }
  }

  try {
    if (embed->parsed()) return run_embed(common, in, out);
    if (seal->parsed()) return run_swap(common, "seal", in, out);
    if (unseal->parsed()) return run_swap(common, "unseal", in, out);
    if (extract->parsed()) return run_extract(common, in);
    if (verify_cmd->parsed()) return run_verify(common, in, reference);
    if (metrics->parsed()) return run_metrics(common, inputs, channel);
    if (demo->parsed()) return run_demo(common, out_dir, seed, seconds);
  } catch (const Failure& f) {
    std::cerr << "fragmark: " << f.message << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "fragmark: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
