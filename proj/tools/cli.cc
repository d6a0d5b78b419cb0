// Copyright 2026 The LayerSteg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string_view>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include "CLI/CLI.hpp"
#endif
#include "layersteg/ga_adjust.h"
#include "layersteg/keystream.h"
#include "layersteg/msg_ga.h"
#include "layersteg/wav_io.h"

namespace layersteg::cli {
namespace {

using nlohmann::json;

std::string Hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
  return buf;
}

std::string Fixed(double v, int digits) {
  if (std::isnan(v)) return "undefined";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Percent(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return "n/a";
  return Fixed(100.0 * static_cast<double>(num) / static_cast<double>(den),
               2) + "%";
}

std::uint64_t ParseSeed(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw StegError(ErrorCode::kInvalidArgument, "bad seed '" + text + "'");
  }
  return v;
}

Threshold ParseThreshold(const std::string& text) {
  if (text == "inf") return std::nullopt;
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || v < 0) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "threshold must be a non-negative integer or 'inf'");
  }
  return v;
}

AudioBuffer LoadWav(const std::string& path) {
  return ParseWav(ReadFileBytes(path));
}

void PrintReport(const EmbedReport& r, std::ostream& out) {
  out << "samples_used = " << r.samples_used << "\n"
      << "samples_skipped = " << r.samples_skipped << "\n"
      << "max_deviation = " << r.max_deviation << "\n"
      << "snr_db = " << Fixed(r.snr_db, 4) << "\n"
      << "capacity_bits = " << r.capacity_bits << "\n";
}

struct EmbedFlags {
  std::string cover;
  std::string message;
  std::string out;
  std::string key_out;
  std::string layers = "1";
  std::string seed = "0";
  bool random_seed = false;
  std::string mode = "ga";
  std::string threshold = "inf";
  GaParams ga;
  bool seed_from_message_ga = false;
  std::string report;
};

int CmdEmbed(const EmbedFlags& f, std::ostream& out) {
  const AudioBuffer cover = LoadWav(f.cover);
  const std::vector<std::uint8_t> message = ReadFileBytes(f.message);

  EmbedConfig config;
  config.mask = ParseLayerMask(f.layers, cover.bit_depth);
  config.mode = ParseEmbedMode(f.mode);
  config.threshold = ParseThreshold(f.threshold);
  config.ga_params = f.ga;
  ValidateGaParams(config.ga_params);
  std::uint64_t seed = ParseSeed(f.seed);
  if (f.random_seed) {
    std::random_device rd;
    seed = (std::uint64_t{rd()} << 32) ^ rd();
  }
  config.key = MasterKey{seed};
  if (f.seed_from_message_ga) {
    MsgGaParams params;
    params.seed = seed;
    const EvolveResult evolved = Evolve(message, params);
    config.key = MasterKeyFromIndividual(evolved.best);
  }

  const EmbedResult result = Embed(cover, message, config);
  if (result.stego == cover) {
    // Nothing changed: keep the input container, extra chunks included.
    WriteFileBytes(f.out, ReadFileBytes(f.cover));
  } else {
    WriteFileBytes(f.out, WriteWav(result.stego));
  }
  const std::string key_text = FormatStegoKey(result.key);
  WriteFileBytes(f.key_out, std::span(reinterpret_cast<const std::uint8_t*>(
                                          key_text.data()),
                                      key_text.size()));
  PrintReport(result.report, out);
  if (!f.report.empty()) {
    const std::string text = ReportToJson(result.report).dump(2) + "\n";
    WriteFileBytes(f.report,
                   std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                             text.size()));
  }
  return kExitOk;
}

int CmdExtract(const std::string& stego_path, const std::string& key_path,
               const std::string& out_path, std::ostream& out) {
  const std::vector<std::uint8_t> key_bytes = ReadFileBytes(key_path);
  const StegoKey key = ParseStegoKey(
      std::string_view(reinterpret_cast<const char*>(key_bytes.data()),
                       key_bytes.size()));
  AudioBuffer stego;
  try {
    stego = LoadWav(stego_path);
  } catch (const StegError& e) {
    // A stego file cut short no longer holds what the key describes.
    if (e.code() == ErrorCode::kTruncatedData) {
      throw StegError(ErrorCode::kKeyMismatch, e.what());
    }
    throw;
  }
  const std::vector<std::uint8_t> message = Extract(stego, key);
  WriteFileBytes(out_path, message);
  out << "extracted " << message.size() << " bytes\n";
  return kExitOk;
}

struct InspectFlags {
  std::string in;
  std::vector<std::string> layers;
};

int CmdInspect(const InspectFlags& f, std::ostream& out) {
  const AudioBuffer b = LoadWav(f.in);
  const std::size_t frames = b.samples.size() / b.channels;
  out << "bit_depth = " << BitWidth(b.bit_depth) << "\n"
      << "channels = " << b.channels << "\n"
      << "sample_rate = " << b.sample_rate << "\n"
      << "frames = " << frames << "\n"
      << "samples = " << b.samples.size() << "\n"
      << "duration_s = "
      << Fixed(static_cast<double>(frames) / b.sample_rate, 3) << "\n";
  std::vector<std::string> masks = f.layers;
  if (masks.empty()) masks = {"1", "1,2", "1,2,3", "1,2,3,4"};
  for (const std::string& text : masks) {
    const LayerMask mask = ParseLayerMask(text, b.bit_depth);
    const std::uint64_t bits = CapacityBits(b, mask);
    out << "capacity[" << mask.ToString() << "] = " << bits << " bits ("
        << bits / 8 << " bytes)\n";
  }
  return kExitOk;
}

struct KeygenFlags {
  std::string message;
  std::optional<int> pop;
  std::optional<int> genes;
  int max_gens = 10000;
  std::string seed = "0";
  bool emit_master_key = false;
};

int CmdKeygenGa(const KeygenFlags& f, std::ostream& out) {
  const std::vector<std::uint8_t> message = ReadFileBytes(f.message);
  MsgGaParams params;
  params.population_size = f.pop;
  params.genes_per_individual = f.genes;
  params.max_generations = f.max_gens;
  params.seed = ParseSeed(f.seed);
  const EvolveResult r = Evolve(message, params);
  out << "best =";
  for (std::size_t i = 0; i < r.best.genes.size(); ++i) {
    out << (i ? "," : " ") << r.best.genes[i];
  }
  out << "\n"
      << "fitness = " << r.best_fitness << "\n"
      << "distinct = " << r.target_fitness << "\n"
      << "generations = " << r.generations_used << "\n"
      << "reached_optimum = " << (r.reached_optimum ? "true" : "false")
      << "\n";
  if (f.emit_master_key) {
    out << "master_key = " << Hex16(MasterKeyFromIndividual(r.best).seed)
        << "\n";
  }
  return kExitOk;
}

struct BenchFlags {
  std::uint64_t samples = 100000;
  std::string layers = "1";
  int bit_depth = 16;
  std::string seed = "0";
};

int CmdBench(const BenchFlags& f, std::ostream& out) {
  const BitDepth depth = BitDepthFromBits(f.bit_depth);
  const std::uint64_t seed = ParseSeed(f.seed);
  std::mt19937_64 gen(seed);
  AudioBuffer cover;
  cover.bit_depth = depth;
  cover.samples.resize(f.samples);
  for (Sample& s : cover.samples) {
    s = FromRaw(static_cast<std::uint32_t>(gen()), depth);
  }
  EmbedConfig config;
  config.mask = ParseLayerMask(f.layers, depth);
  config.key = MasterKey{seed};
  std::vector<std::uint8_t> message(CapacityBits(cover, config.mask) / 8);
  for (auto& b : message) b = static_cast<std::uint8_t>(gen());
  out << "samples = " << f.samples << ", layers = " << config.mask.ToString()
      << ", message_bytes = " << message.size() << "\n";
  for (const EmbedMode mode :
       {EmbedMode::kPlain, EmbedMode::kNearest, EmbedMode::kGa}) {
    config.mode = mode;
    const auto start = std::chrono::steady_clock::now();
    const EmbedResult r = Embed(cover, message, config);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const double rate =
        secs > 0 ? static_cast<double>(r.report.samples_used) / secs : 0.0;
    out << EmbedModeName(mode) << ": " << Fixed(secs * 1e3, 2) << " ms, "
        << Fixed(rate, 0) << " samples/s, snr_db = "
        << Fixed(r.report.snr_db, 4) << "\n";
  }
  return kExitOk;
}

}  // namespace

json ReportToJson(const EmbedReport& report) {
  json j;
  j["samples_used"] = report.samples_used;
  j["samples_skipped"] = report.samples_skipped;
  j["max_deviation"] = report.max_deviation;
  if (std::isnan(report.snr_db)) {
    j["snr_db"] = nullptr;
  } else if (std::isinf(report.snr_db)) {
    j["snr_db"] = "inf";
  } else {
    j["snr_db"] = report.snr_db;
  }
  j["capacity_bits"] = report.capacity_bits;
  return j;
}

EmbedReport ReportFromJson(const json& j) {
  static constexpr std::string_view kFields[] = {
      "samples_used", "samples_skipped", "max_deviation", "snr_db",
      "capacity_bits"};
  if (!j.is_object() || j.size() != std::size(kFields)) {
    throw StegError(ErrorCode::kInvalidArgument, "report must be an object");
  }
  for (std::string_view field : kFields) {
    if (!j.contains(std::string(field))) {
      throw StegError(ErrorCode::kInvalidArgument,
                      "report lacks " + std::string(field));
    }
  }
  EmbedReport r;
  try {
    r.samples_used = j.at("samples_used").get<std::uint64_t>();
    r.samples_skipped = j.at("samples_skipped").get<std::uint64_t>();
    r.max_deviation = j.at("max_deviation").get<std::int64_t>();
    r.capacity_bits = j.at("capacity_bits").get<std::uint64_t>();
    const json& snr = j.at("snr_db");
    if (snr.is_null()) {
      r.snr_db = std::numeric_limits<double>::quiet_NaN();
    } else if (snr.is_string()) {
      if (snr.get<std::string>() != "inf") {
        throw StegError(ErrorCode::kInvalidArgument, "bad snr_db");
      }
      r.snr_db = std::numeric_limits<double>::infinity();
    } else {
      r.snr_db = snr.get<double>();
    }
  } catch (const json::exception& e) {
    throw StegError(ErrorCode::kInvalidArgument, e.what());
  }
  return r;
}

bool OracleCheckResult::Passed() const {
  return nearest_mismatches == 0 && ga_worse_than_alter == 0 &&
         ga_matches * 100 >= ga_cases * 99;
}

OracleCheckResult RunOracleCheck(const OracleCheckOptions& options,
                                 const NearestFn& nearest, std::ostream& out) {
  OracleCheckResult result;
  const bool do8 = !options.bit_depth || *options.bit_depth == BitDepth::k8;
  const bool do16 = !options.bit_depth || *options.bit_depth == BitDepth::k16;
  std::mt19937_64 gen(options.seed);

  if (do8) {
    std::uint64_t cases = 0;
    std::uint64_t bad = 0;
    for (std::uint32_t bits = 1; bits < 256; ++bits) {
      const LayerMask mask = LayerMask::FromBits(bits, BitDepth::k8);
      const int k = mask.width();
      for (std::uint32_t p = 0; p < (1u << k); ++p) {
        const BitPattern pattern(p, k);
        for (Sample s = 0; s < 256; ++s) {
          ++cases;
          bad += nearest(s, mask, pattern) != OracleNearest(s, mask, pattern);
        }
      }
    }
    out << "nearest 8-bit exhaustive: " << cases - bad << "/" << cases << " ("
        << Percent(cases - bad, cases) << " match)\n";
    result.nearest_cases += cases;
    result.nearest_mismatches += bad;
  }
  if (do16) {
    std::uint64_t bad = 0;
    const std::uint64_t cases = options.nearest_samples_16;
    for (std::uint64_t i = 0; i < cases; ++i) {
      const LayerMask mask = LayerMask::FromBits(
          static_cast<std::uint32_t>(1 + gen() % 0xFFFF), BitDepth::k16);
      const BitPattern pattern(
          static_cast<std::uint32_t>(gen() & ((1ull << mask.width()) - 1)),
          mask.width());
      const Sample s = FromRaw(static_cast<std::uint32_t>(gen()),
                               BitDepth::k16);
      bad += nearest(s, mask, pattern) != OracleNearest(s, mask, pattern);
    }
    out << "nearest 16-bit sampled: " << cases - bad << "/" << cases << " ("
        << Percent(cases - bad, cases) << " match)\n";
    result.nearest_cases += cases;
    result.nearest_mismatches += bad;
  }
  out << "nearest: " << Percent(result.nearest_cases -
                                    result.nearest_mismatches,
                                result.nearest_cases)
      << " match\n";

  const BitDepth ga_depth = do8 ? BitDepth::k8 : BitDepth::k16;
  for (std::uint64_t i = 0; i < options.ga_samples; ++i) {
    const std::uint32_t full = FullMask(ga_depth);
    const LayerMask mask = LayerMask::FromBits(
        static_cast<std::uint32_t>(1 + gen() % full), ga_depth);
    const BitPattern pattern(
        static_cast<std::uint32_t>(gen() & ((1ull << mask.width()) - 1)),
        mask.width());
    const Sample s = FromRaw(static_cast<std::uint32_t>(gen()), ga_depth);
    const Sample got = RunGa(s, mask, pattern, GaParams{}, gen());
    const Sample best = OracleNearest(s, mask, pattern);
    ++result.ga_cases;
    result.ga_matches += Distance(got, s) == Distance(best, s);
    result.ga_worse_than_alter +=
        Distance(got, s) > Distance(Alter(s, mask, pattern), s);
  }
  if (result.ga_cases == 0) {
    out << "ga: no cases\n";
  } else {
    out << "ga " << BitWidth(ga_depth) << "-bit: " << result.ga_matches << "/"
        << result.ga_cases << " (" << Percent(result.ga_matches,
                                              result.ga_cases)
        << " optimal), worse than alteration: " << result.ga_worse_than_alter
        << "\n";
  }
  return result;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedContainer:
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kTruncatedData:
    case ErrorCode::kMalformedKey:
      return kExitIo;
    case ErrorCode::kKeyMismatch:
      return kExitKeyMismatch;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInsufficientCapacity:
    case ErrorCode::kCapacityExhaustedBySkips:
    case ErrorCode::kBitDepthMismatch:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kNotDefined:
    case ErrorCode::kEmptyMessage:
    case ErrorCode::kUnreachableOptimum:
      return kExitConfig;
  }
  return kExitConfig;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const NearestFn& nearest) {
  CLI::App app{"Keyed bit-plane audio steganography", "layersteg"};
  app.require_subcommand(1);

  EmbedFlags ef;
  CLI::App* embed = app.add_subcommand("embed", "Hide a message in a WAV file");
  embed->add_option("--cover", ef.cover, "Cover WAV")->required();
  embed->add_option("--message", ef.message, "Message file")->required();
  embed->add_option("--out", ef.out, "Stego WAV to write")->required();
  embed->add_option("--key-out", ef.key_out, "Key file to write")->required();
  embed->add_option("--layers", ef.layers, "Target layers, e.g. 1,2")
      ->capture_default_str();
  embed->add_option("--seed", ef.seed, "Master key seed")
      ->capture_default_str();
  embed->add_flag("--random-seed", ef.random_seed,
                  "Draw the seed from the system entropy source");
  embed->add_option("--mode", ef.mode, "plain, nearest or ga")
      ->capture_default_str();
  embed->add_option("--threshold", ef.threshold,
                    "Max per-sample deviation or 'inf'")
      ->capture_default_str();
  embed->add_option("--ga-pop", ef.ga.population_size)->capture_default_str();
  embed->add_option("--ga-gens", ef.ga.generations)->capture_default_str();
  embed->add_option("--ga-pc", ef.ga.crossover_prob)->capture_default_str();
  embed->add_option("--ga-pm", ef.ga.mutation_prob)->capture_default_str();
  embed->add_flag("--seed-from-message-ga", ef.seed_from_message_ga,
                  "Derive the key from the message GA's best individual");
  embed->add_option("--report", ef.report, "Write the report as JSON");

  std::string stego_path, key_path, extract_out;
  CLI::App* extract =
      app.add_subcommand("extract", "Recover a message from a stego WAV");
  extract->add_option("--stego", stego_path)->required();
  extract->add_option("--key", key_path)->required();
  extract->add_option("--out", extract_out)->required();

  InspectFlags inf;
  CLI::App* inspect =
      app.add_subcommand("inspect", "Print WAV metadata and capacities");
  inspect->add_option("--in", inf.in, "WAV file")->required();
  inspect->add_option("--layers", inf.layers, "Layer masks to report")
      ->take_all();

  KeygenFlags kf;
  CLI::App* keygen =
      app.add_subcommand("keygen-ga", "Run the message genetic algorithm");
  keygen->add_option("--message", kf.message)->required();
  keygen->add_option("--pop", kf.pop);
  keygen->add_option("--genes", kf.genes);
  keygen->add_option("--max-gens", kf.max_gens)->capture_default_str();
  keygen->add_option("--seed", kf.seed)->capture_default_str();
  keygen->add_flag("--emit-master-key", kf.emit_master_key);

  OracleCheckOptions of;
  int oracle_depth = 0;
  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "Compare fast paths against brute force");
  oracle->add_option("--samples", of.ga_samples, "GA cases")
      ->capture_default_str();
  oracle->add_option("--bit-depth", oracle_depth, "8 or 16 (default both)")
      ->check(CLI::IsMember({8, 16}));
  std::string oracle_seed = "0";
  oracle->add_option("--seed", oracle_seed)->capture_default_str();

  BenchFlags bf;
  CLI::App* bench = app.add_subcommand("bench", "Time embedding per mode");
  bench->add_option("--samples", bf.samples)->capture_default_str();
  bench->add_option("--layers", bf.layers)->capture_default_str();
  bench->add_option("--bit-depth", bf.bit_depth)
      ->check(CLI::IsMember({8, 16}))
      ->capture_default_str();
  bench->add_option("--seed", bf.seed)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }

  try {
    if (*embed) return CmdEmbed(ef, out);
    if (*extract) return CmdExtract(stego_path, key_path, extract_out, out);
    if (*inspect) return CmdInspect(inf, out);
    if (*keygen) return CmdKeygenGa(kf, out);
    if (*bench) return CmdBench(bf, out);
    if (*oracle) {
      if (oracle_depth) of.bit_depth = BitDepthFromBits(oracle_depth);
      of.seed = ParseSeed(oracle_seed);
      const OracleCheckResult r = RunOracleCheck(of, nearest, out);
      if (!r.Passed()) {
        err << "error: oracle check failed\n";
        return kExitOracleViolation;
      }
      return kExitOk;
    }
  } catch (const StegError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}

}  // namespace layersteg::cli
