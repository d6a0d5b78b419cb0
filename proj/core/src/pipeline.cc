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

#include "layersteg/pipeline.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <limits>
#include <map>
#include <system_error>

#include "layersteg/error.h"

namespace layersteg {
namespace {

constexpr const char* kKeyFields[] = {
    "version", "seed",   "bit_depth", "layers",      "mode",   "threshold",
    "ga_pop",  "ga_gens", "ga_pc",    "ga_pm", "payload_len", "skipped"};

// Reads bit `index` of `bytes`, most-significant bit of each byte first.
bool StreamBit(std::span<const std::uint8_t> bytes, std::uint64_t index) {
  return ((bytes[index / 8] >> (7 - index % 8)) & 1u) != 0;
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void BadKey(const std::string& what) {
  throw StegError(ErrorCode::kMalformedKey, what);
}

template <typename T>
T ParseNumber(std::string_view field, std::string_view text, int base = 10) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    BadKey("field '" + std::string(field) + "' has bad value '" +
           std::string(text) + "'");
  }
  return value;
}

double ParseDouble(std::string_view field, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    BadKey("field '" + std::string(field) + "' has bad value '" +
           std::string(text) + "'");
  }
  return value;
}

double SignedAmplitude(Sample s, BitDepth depth) {
  return depth == BitDepth::k8 ? static_cast<double>(s - 128)
                               : static_cast<double>(s);
}

}  // namespace

std::string_view EmbedModeName(EmbedMode mode) {
  switch (mode) {
    case EmbedMode::kPlain:
      return "plain";
    case EmbedMode::kNearest:
      return "nearest";
    case EmbedMode::kGa:
      return "ga";
  }
  return "unknown";
}

EmbedMode ParseEmbedMode(std::string_view name) {
  if (name == "plain") return EmbedMode::kPlain;
  if (name == "nearest") return EmbedMode::kNearest;
  if (name == "ga") return EmbedMode::kGa;
  throw StegError(ErrorCode::kInvalidArgument,
                  "unknown mode '" + std::string(name) +
                      "' (expected plain, nearest or ga)");
}

std::string FormatStegoKey(const StegoKey& key) {
  char seed[17];
  std::snprintf(seed, sizeof(seed), "%016llx",
                static_cast<unsigned long long>(key.key.seed));
  std::string skipped;
  for (std::size_t index : key.skipped_indices) {
    if (!skipped.empty()) skipped += ',';
    skipped += std::to_string(index);
  }
  std::string out;
  auto line = [&out](std::string_view field, const std::string& value) {
    out.append(field).append(" = ").append(value).append("\n");
  };
  line("version", std::to_string(key.format_version));
  line("seed", seed);
  line("bit_depth", std::to_string(BitWidth(key.mask.depth())));
  line("layers", key.mask.ToString());
  line("mode", std::string(EmbedModeName(key.mode)));
  line("threshold",
       key.threshold ? std::to_string(*key.threshold) : std::string("inf"));
  line("ga_pop", std::to_string(key.ga_params.population_size));
  line("ga_gens", std::to_string(key.ga_params.generations));
  line("ga_pc", FormatDouble(key.ga_params.crossover_prob));
  line("ga_pm", FormatDouble(key.ga_params.mutation_prob));
  line("payload_len", std::to_string(key.payload_len_bytes));
  line("skipped", skipped);
  return out;
}

StegoKey ParseStegoKey(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    const std::string_view raw_line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    const std::string_view line = Trim(raw_line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      BadKey("line without '=': '" + std::string(line) + "'");
    }
    const std::string name(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    if (std::find(std::begin(kKeyFields), std::end(kKeyFields), name) ==
        std::end(kKeyFields)) {
      BadKey("unknown field '" + name + "'");
    }
    if (!fields.emplace(name, value).second) {
      BadKey("duplicate field '" + name + "'");
    }
  }
  for (const char* name : kKeyFields) {
    if (!fields.count(name)) {
      BadKey("missing field '" + std::string(name) + "'");
    }
  }

  StegoKey key;
  key.format_version = ParseNumber<int>("version", fields["version"]);
  if (key.format_version != StegoKey::kFormatVersion) {
    BadKey("unsupported key version " + std::to_string(key.format_version));
  }
  const std::string& seed = fields["seed"];
  if (seed.size() != 16) BadKey("seed must be exactly 16 hex digits");
  key.key.seed = ParseNumber<std::uint64_t>("seed", seed, 16);

  try {
    const BitDepth depth =
        BitDepthFromBits(ParseNumber<int>("bit_depth", fields["bit_depth"]));
    key.mask = ParseLayerMask(fields["layers"], depth);
    key.mode = ParseEmbedMode(fields["mode"]);
  } catch (const StegError& e) {
    if (e.code() == ErrorCode::kMalformedKey) throw;
    BadKey(e.what());
  }

  if (fields["threshold"] != "inf") {
    key.threshold = ParseNumber<std::int64_t>("threshold", fields["threshold"]);
    if (*key.threshold < 0) BadKey("threshold must be non-negative");
  }
  key.ga_params.population_size = ParseNumber<int>("ga_pop", fields["ga_pop"]);
  key.ga_params.generations = ParseNumber<int>("ga_gens", fields["ga_gens"]);
  key.ga_params.crossover_prob = ParseDouble("ga_pc", fields["ga_pc"]);
  key.ga_params.mutation_prob = ParseDouble("ga_pm", fields["ga_pm"]);
  try {
    ValidateGaParams(key.ga_params);
  } catch (const StegError& e) {
    BadKey(e.what());
  }
  key.payload_len_bytes =
      ParseNumber<std::uint64_t>("payload_len", fields["payload_len"]);

  std::string_view skipped = fields["skipped"];
  while (!skipped.empty()) {
    const std::size_t comma = skipped.find(',');
    const std::string_view item = Trim(skipped.substr(0, comma));
    const auto index = ParseNumber<std::size_t>("skipped", item);
    if (!key.skipped_indices.empty() && index <= key.skipped_indices.back()) {
      BadKey("skipped indices must be strictly increasing");
    }
    key.skipped_indices.push_back(index);
    if (comma == std::string_view::npos) break;
    skipped.remove_prefix(comma + 1);
    if (skipped.empty()) BadKey("trailing comma in skipped list");
  }
  return key;
}

std::uint64_t CapacityBits(const AudioBuffer& buffer, const LayerMask& mask) {
  if (buffer.bit_depth != mask.depth()) {
    throw StegError(ErrorCode::kBitDepthMismatch,
                    "layer mask is for " +
                        std::to_string(BitWidth(mask.depth())) +
                        "-bit samples, buffer is " +
                        std::to_string(BitWidth(buffer.bit_depth)) + "-bit");
  }
  return static_cast<std::uint64_t>(buffer.samples.size()) *
         static_cast<std::uint64_t>(mask.width());
}

Verdict VerifySample(Sample original, Sample modified, Threshold threshold) {
  if (!threshold) return Verdict::kAccept;
  return Distance(original, modified) <= *threshold ? Verdict::kAccept
                                                    : Verdict::kReject;
}

Sample ModifySample(Sample sample, const BitPattern& pattern,
                    std::size_t sample_index, const EmbedConfig& config) {
  switch (config.mode) {
    case EmbedMode::kPlain:
      return Alter(sample, config.mask, pattern);
    case EmbedMode::kNearest:
      return AdjustNearest(sample, config.mask, pattern);
    case EmbedMode::kGa:
      return RunGa(sample, config.mask, pattern, config.ga_params,
                   DeriveSeed(config.key, "ga", sample_index));
  }
  throw StegError(ErrorCode::kInvalidArgument, "unknown embed mode");
}

EmbedResult Embed(const AudioBuffer& cover,
                  std::span<const std::uint8_t> message,
                  const EmbedConfig& config) {
  ValidateAudioBuffer(cover);
  const std::uint64_t capacity = CapacityBits(cover, config.mask);
  if (config.threshold && *config.threshold < 0) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "threshold must be non-negative");
  }
  if (config.mode == EmbedMode::kGa) ValidateGaParams(config.ga_params);

  const std::uint64_t total_bits =
      8 * static_cast<std::uint64_t>(message.size());
  if (total_bits > capacity) {
    throw StegError(ErrorCode::kInsufficientCapacity,
                    std::to_string(total_bits) + " payload bits exceed " +
                        std::to_string(capacity) + " bits of capacity");
  }

  EmbedResult result;
  result.stego = cover;
  StegoKey& key = result.key;
  key.key = config.key;
  key.mask = config.mask;
  key.mode = config.mode;
  key.threshold = config.threshold;
  key.ga_params = config.ga_params;
  key.payload_len_bytes = message.size();

  const std::vector<std::uint8_t> cipher = XorKeystream(message, config.key);
  const std::vector<std::size_t> order =
      total_bits == 0 ? std::vector<std::size_t>{}
                      : PermuteIndices(cover.samples.size(), config.key);
  const int k = config.mask.width();
  const std::uint64_t groups = (total_bits + k - 1) / k;

  EmbedReport& report = result.report;
  std::size_t cursor = 0;
  for (std::uint64_t group = 0; group < groups; ++group) {
    std::uint32_t bits = 0;
    for (int i = 0; i < k; ++i) {
      const std::uint64_t bit = group * k + i;
      if (bit < total_bits && StreamBit(cipher, bit)) {
        bits |= std::uint32_t{1} << i;
      }
    }
    const BitPattern pattern(bits, k);
    while (true) {
      if (cursor == order.size()) {
        throw StegError(
            ErrorCode::kCapacityExhaustedBySkips,
            "ran out of samples after " + std::to_string(report.samples_used) +
                " accepted and " + std::to_string(report.samples_skipped) +
                " rejected; " + std::to_string(groups - group) +
                " bit groups left");
      }
      const std::size_t index = order[cursor++];
      const Sample original = cover.samples[index];
      const Sample modified = ModifySample(original, pattern, index, config);
      if (VerifySample(original, modified, config.threshold) ==
          Verdict::kAccept) {
        result.stego.samples[index] = modified;
        ++report.samples_used;
        report.max_deviation =
            std::max<std::int64_t>(report.max_deviation,
                                   Distance(original, modified));
        break;
      }
      key.skipped_indices.push_back(index);
      ++report.samples_skipped;
    }
  }
  std::sort(key.skipped_indices.begin(), key.skipped_indices.end());

  report.capacity_bits = capacity;
  try {
    report.snr_db = SnrDb(cover, result.stego);
  } catch (const StegError& e) {
    if (e.code() != ErrorCode::kNotDefined) throw;
    report.snr_db = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

std::vector<std::uint8_t> Extract(const AudioBuffer& stego,
                                  const StegoKey& key) {
  if (stego.bit_depth != key.mask.depth()) {
    throw StegError(ErrorCode::kBitDepthMismatch,
                    "key is for " + std::to_string(BitWidth(key.mask.depth())) +
                        "-bit audio, stego is " +
                        std::to_string(BitWidth(stego.bit_depth)) + "-bit");
  }
  const std::uint64_t total_bits = 8 * key.payload_len_bytes;
  std::vector<std::uint8_t> cipher(key.payload_len_bytes, 0);
  if (total_bits == 0) return cipher;

  const std::size_t n = stego.samples.size();
  if (!key.skipped_indices.empty() && key.skipped_indices.back() >= n) {
    throw StegError(ErrorCode::kKeyMismatch,
                    "skipped index beyond the end of the stego audio");
  }
  const std::vector<std::size_t> order = PermuteIndices(n, key.key);
  const int k = key.mask.width();
  std::uint64_t bit = 0;
  for (std::size_t index : order) {
    if (bit >= total_bits) break;
    if (std::binary_search(key.skipped_indices.begin(),
                           key.skipped_indices.end(), index)) {
      continue;
    }
    const BitPattern pattern = ReadBits(stego.samples[index], key.mask);
    for (int i = 0; i < k && bit < total_bits; ++i, ++bit) {
      if (pattern.bit(i)) {
        cipher[bit / 8] |= static_cast<std::uint8_t>(0x80u >> (bit % 8));
      }
    }
  }
  if (bit < total_bits) {
    throw StegError(ErrorCode::kKeyMismatch,
                    "stego audio holds " + std::to_string(bit) + " of " +
                        std::to_string(total_bits) + " declared payload bits");
  }
  return XorKeystream(cipher, key.key);
}

double SnrDb(const AudioBuffer& original, const AudioBuffer& stego) {
  if (original.samples.size() != stego.samples.size() ||
      original.bit_depth != stego.bit_depth ||
      original.channels != stego.channels) {
    throw StegError(ErrorCode::kLengthMismatch,
                    "buffers differ in length, bit depth or channel count");
  }
  long double signal = 0.0L;
  long double noise = 0.0L;
  for (std::size_t i = 0; i < original.samples.size(); ++i) {
    const double s = SignedAmplitude(original.samples[i], original.bit_depth);
    const double t = SignedAmplitude(stego.samples[i], stego.bit_depth);
    signal += static_cast<long double>(s) * s;
    noise += static_cast<long double>(s - t) * (s - t);
  }
  if (noise == 0.0L) return std::numeric_limits<double>::infinity();
  if (signal == 0.0L) {
    throw StegError(ErrorCode::kNotDefined,
                    "SNR undefined for a silent original with nonzero noise");
  }
  return static_cast<double>(10.0L * std::log10(signal / noise));
}

}  // namespace layersteg
