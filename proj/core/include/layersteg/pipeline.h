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

// Embedding and extraction.
//
// Embedding walks the samples in keyed permutation order. For each sample it
// substitutes the next k payload bits (alteration), lets the configured
// engine move the remaining bits toward the original value (modification),
// accepts the result only if it stays within the distortion threshold
// (verification) and otherwise keeps the original sample and retries the
// same bits at the next index. The stego buffer is assembled in index order
// (reconstruction).
//
// Bit packing: payload bytes are read most-significant bit first; each group
// of k bits fills the target layers lowest layer first. A final partial group
// is zero padded.

#ifndef LAYERSTEG_PIPELINE_H_
#define LAYERSTEG_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "layersteg/bitplane.h"
#include "layersteg/ga_adjust.h"
#include "layersteg/keystream.h"
#include "layersteg/wav_io.h"

namespace layersteg {

enum class EmbedMode { kPlain, kNearest, kGa };

std::string_view EmbedModeName(EmbedMode mode);
// "plain", "nearest" or "ga"; throws StegError(kInvalidArgument).
EmbedMode ParseEmbedMode(std::string_view name);

// Maximum accepted per-sample distance; nullopt means unlimited.
using Threshold = std::optional<std::int64_t>;

struct EmbedConfig {
  LayerMask mask = LayerMask::FromBits(1, BitDepth::k16);
  MasterKey key;
  EmbedMode mode = EmbedMode::kGa;
  Threshold threshold;
  GaParams ga_params;
};

struct StegoKey {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  MasterKey key;
  LayerMask mask = LayerMask::FromBits(1, BitDepth::k16);
  EmbedMode mode = EmbedMode::kGa;
  Threshold threshold;
  GaParams ga_params;
  std::uint64_t payload_len_bytes = 0;
  // Strictly increasing sample indices whose modification was rejected.
  std::vector<std::size_t> skipped_indices;

  friend bool operator==(const StegoKey&, const StegoKey&) = default;
};

// Text form, one "field = value" per line, in this order:
// version, seed (16 hex digits), bit_depth, layers, mode, threshold
// (integer or "inf"), ga_pop, ga_gens, ga_pc, ga_pm, payload_len, skipped.
std::string FormatStegoKey(const StegoKey& key);
// Throws StegError(kMalformedKey) on unknown, duplicate, missing or
// ill-formed fields.
StegoKey ParseStegoKey(std::string_view text);

struct EmbedReport {
  std::uint64_t samples_used = 0;
  std::uint64_t samples_skipped = 0;
  std::int64_t max_deviation = 0;
  // +inf when stego equals cover, NaN when undefined (silent cover).
  double snr_db = 0.0;
  std::uint64_t capacity_bits = 0;
};

struct EmbedResult {
  AudioBuffer stego;
  StegoKey key;
  EmbedReport report;
};

// |samples| * |layers|. Throws StegError(kBitDepthMismatch).
std::uint64_t CapacityBits(const AudioBuffer& buffer, const LayerMask& mask);

enum class Verdict { kAccept, kReject };

Verdict VerifySample(Sample original, Sample modified, Threshold threshold);

// Applies the configured modification engine to one sample.
Sample ModifySample(Sample sample, const BitPattern& pattern,
                    std::size_t sample_index, const EmbedConfig& config);

// Errors: kBitDepthMismatch, kInsufficientCapacity,
// kCapacityExhaustedBySkips, kInvalidArgument.
EmbedResult Embed(const AudioBuffer& cover,
                  std::span<const std::uint8_t> message,
                  const EmbedConfig& config);

// Errors: kBitDepthMismatch, kKeyMismatch.
std::vector<std::uint8_t> Extract(const AudioBuffer& stego,
                                  const StegoKey& key);

// 10 log10(sum s^2 / sum (s - t)^2) over signed amplitudes (8-bit samples
// are centred on 128). +inf for identical buffers. Throws
// StegError(kLengthMismatch) for incompatible buffers and
// StegError(kNotDefined) for a silent original with nonzero noise.
double SnrDb(const AudioBuffer& original, const AudioBuffer& stego);

}  // namespace layersteg

#endif  // LAYERSTEG_PIPELINE_H_
