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

#include "layersteg/bitplane.h"

#include <bit>
#include <charconv>
#include <optional>

#include "layersteg/error.h"

namespace layersteg {
namespace {

void CheckOperands(Sample sample, const LayerMask& mask,
                   const BitPattern& pattern) {
  if (!InRange(sample, mask.depth())) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "sample " + std::to_string(sample) +
                        " out of range for bit depth " +
                        std::to_string(BitWidth(mask.depth())));
  }
  if (pattern.width() != mask.width()) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "pattern width " + std::to_string(pattern.width()) +
                        " does not match mask width " +
                        std::to_string(mask.width()));
  }
}

// The closed form works on "ordered" codes: the unsigned offset
// u = value - SampleMin, whose integer order equals numeric order. For 16-bit
// this is the raw pattern with the sign bit flipped, so fixed bit positions
// are the same and only the required sign bit is inverted.
std::uint32_t SignFlip(BitDepth depth) {
  return depth == BitDepth::k16 ? 0x8000u : 0u;
}

// Smallest y >= x (y < 2^width) with (y & fixed) == required.
std::optional<std::uint32_t> CeilWithFixed(std::uint32_t x,
                                           std::uint32_t fixed,
                                           std::uint32_t required, int width) {
  const std::uint32_t forced = (x & ~fixed) | required;
  if (forced == x) return x;
  const std::uint32_t free = ~fixed & ((std::uint32_t{1} << width) - 1);
  const int h = std::bit_width(forced ^ x) - 1;
  const std::uint32_t below_h = (std::uint32_t{1} << h) - 1;
  if ((forced >> h) & 1u) {
    // x's prefix above h survives, h becomes 1, everything free below is 0.
    return (forced & ~below_h) | (required & below_h);
  }
  // Must carry into the lowest free zero bit above h.
  const std::uint32_t candidates = free & ~x & ~((below_h << 1) | 1u);
  if (candidates == 0) return std::nullopt;
  const int p = std::countr_zero(candidates);
  const std::uint32_t below_p = (std::uint32_t{1} << p) - 1;
  return (x & ~below_p) | (std::uint32_t{1} << p) | (required & below_p);
}

// Largest y <= x with (y & fixed) == required.
std::optional<std::uint32_t> FloorWithFixed(std::uint32_t x,
                                            std::uint32_t fixed,
                                            std::uint32_t required,
                                            int width) {
  const std::uint32_t forced = (x & ~fixed) | required;
  if (forced == x) return x;
  const std::uint32_t free = ~fixed & ((std::uint32_t{1} << width) - 1);
  const int h = std::bit_width(forced ^ x) - 1;
  const std::uint32_t below_h = (std::uint32_t{1} << h) - 1;
  if (((forced >> h) & 1u) == 0) {
    return (forced & ~below_h) | ((required | free) & below_h);
  }
  // Must borrow from the lowest free one bit above h.
  const std::uint32_t candidates = free & x & ~((below_h << 1) | 1u);
  if (candidates == 0) return std::nullopt;
  const int p = std::countr_zero(candidates);
  const std::uint32_t below_p = (std::uint32_t{1} << p) - 1;
  return (x & ~below_p & ~(std::uint32_t{1} << p)) |
         ((required | free) & below_p);
}

}  // namespace

BitDepth BitDepthFromBits(int bits) {
  if (bits == 8) return BitDepth::k8;
  if (bits == 16) return BitDepth::k16;
  throw StegError(ErrorCode::kUnsupportedFormat,
                  "bit depth " + std::to_string(bits) +
                      " not supported (expected 8 or 16)");
}

LayerMask LayerMask::FromLayers(std::span<const int> layers, BitDepth depth) {
  if (layers.empty()) {
    throw StegError(ErrorCode::kInvalidArgument, "layer mask is empty");
  }
  std::uint32_t bits = 0;
  for (int layer : layers) {
    if (layer < 1 || layer > BitWidth(depth)) {
      throw StegError(ErrorCode::kInvalidArgument,
                      "layer " + std::to_string(layer) + " outside [1, " +
                          std::to_string(BitWidth(depth)) + "]");
    }
    const std::uint32_t bit = std::uint32_t{1} << (layer - 1);
    if (bits & bit) {
      throw StegError(ErrorCode::kInvalidArgument,
                      "layer " + std::to_string(layer) + " listed twice");
    }
    bits |= bit;
  }
  return LayerMask(bits, depth);
}

LayerMask LayerMask::FromBits(std::uint32_t bits, BitDepth depth) {
  if (bits == 0 || (bits & ~FullMask(depth)) != 0) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "layer bit mask " + std::to_string(bits) +
                        " invalid for bit depth " +
                        std::to_string(BitWidth(depth)));
  }
  return LayerMask(bits, depth);
}

int LayerMask::width() const { return std::popcount(bits_); }

std::vector<int> LayerMask::layers() const {
  std::vector<int> out;
  for (int j = 1; j <= BitWidth(depth_); ++j) {
    if ((bits_ >> (j - 1)) & 1u) out.push_back(j);
  }
  return out;
}

std::string LayerMask::ToString() const {
  std::string out;
  for (int layer : layers()) {
    if (!out.empty()) out += ',';
    out += std::to_string(layer);
  }
  return out;
}

LayerMask ParseLayerMask(std::string_view text, BitDepth depth) {
  std::vector<int> layers;
  while (true) {
    const std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int layer = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), layer);
    if (item.empty() || ec != std::errc() ||
        ptr != item.data() + item.size()) {
      throw StegError(ErrorCode::kInvalidArgument,
                      "bad layer list '" + std::string(text) + "'");
    }
    layers.push_back(layer);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return LayerMask::FromLayers(layers, depth);
}

BitPattern::BitPattern(std::uint32_t value, int width)
    : value_(value), width_(width) {
  if (width < 0 || width > 16) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "pattern width " + std::to_string(width));
  }
  if ((value >> width) != 0) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "pattern value " + std::to_string(value) +
                        " wider than " + std::to_string(width) + " bits");
  }
}

std::uint32_t DepositPattern(const LayerMask& mask, const BitPattern& pattern) {
  std::uint32_t out = 0;
  std::uint32_t remaining = mask.bits();
  for (int i = 0; remaining != 0; ++i) {
    const std::uint32_t lowest = remaining & (~remaining + 1);
    if (pattern.bit(i)) out |= lowest;
    remaining &= remaining - 1;
  }
  return out;
}

BitPattern ReadBits(Sample sample, const LayerMask& mask) {
  const std::uint32_t raw = ToRaw(sample, mask.depth());
  std::uint32_t value = 0;
  std::uint32_t remaining = mask.bits();
  for (int i = 0; remaining != 0; ++i) {
    const std::uint32_t lowest = remaining & (~remaining + 1);
    if (raw & lowest) value |= std::uint32_t{1} << i;
    remaining &= remaining - 1;
  }
  return BitPattern(value, mask.width());
}

Sample Alter(Sample sample, const LayerMask& mask, const BitPattern& pattern) {
  CheckOperands(sample, mask, pattern);
  const std::uint32_t raw = ToRaw(sample, mask.depth());
  return FromRaw((raw & ~mask.bits()) | DepositPattern(mask, pattern),
                 mask.depth());
}

Sample AdjustNearest(Sample sample, const LayerMask& mask,
                     const BitPattern& pattern) {
  CheckOperands(sample, mask, pattern);
  const BitDepth depth = mask.depth();
  const int width = BitWidth(depth);
  const std::uint32_t flip = SignFlip(depth);
  const std::uint32_t fixed = mask.bits();
  const std::uint32_t required =
      DepositPattern(mask, pattern) ^ (flip & fixed);
  const auto x = static_cast<std::uint32_t>(sample - SampleMin(depth));

  const auto up = CeilWithFixed(x, fixed, required, width);
  const auto down = FloorWithFixed(x, fixed, required, width);
  // At least one side always exists: the fixed bits alone form a valid code.
  std::uint32_t best;
  if (!up) {
    best = *down;
  } else if (!down) {
    best = *up;
  } else {
    best = (x - *down) <= (*up - x) ? *down : *up;
  }
  return static_cast<Sample>(best) + SampleMin(depth);
}

Sample OracleNearest(Sample sample, const LayerMask& mask,
                     const BitPattern& pattern) {
  CheckOperands(sample, mask, pattern);
  const BitDepth depth = mask.depth();
  const std::uint32_t want = DepositPattern(mask, pattern);
  Sample best = 0;
  std::int32_t best_distance = -1;
  for (Sample v = SampleMin(depth); v <= SampleMax(depth); ++v) {
    if ((ToRaw(v, depth) & mask.bits()) != want) continue;
    const std::int32_t d = Distance(v, sample);
    // Ascending scan with strict '<' keeps the smaller value on ties.
    if (best_distance < 0 || d < best_distance) {
      best = v;
      best_distance = d;
    }
  }
  return best;
}

}  // namespace layersteg
