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

// Bit-layer arithmetic on single PCM samples.
//
// A sample is handled as its numeric value (unsigned 0..255 for 8-bit PCM,
// signed -32768..32767 for 16-bit PCM). Its raw form is the unsigned bit
// pattern stored in the file (two's complement for 16-bit). Layers are
// 1-based: layer 1 is the LSB and layer j has place value 2^(j-1) in the raw
// form. Distances are always measured on numeric values.

#ifndef LAYERSTEG_BITPLANE_H_
#define LAYERSTEG_BITPLANE_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace layersteg {

enum class BitDepth : int { k8 = 8, k16 = 16 };

using Sample = std::int32_t;

constexpr int BitWidth(BitDepth depth) { return static_cast<int>(depth); }

constexpr std::uint32_t FullMask(BitDepth depth) {
  return (std::uint32_t{1} << BitWidth(depth)) - 1;
}

constexpr Sample SampleMin(BitDepth depth) {
  return depth == BitDepth::k8 ? 0 : -32768;
}

constexpr Sample SampleMax(BitDepth depth) {
  return depth == BitDepth::k8 ? 255 : 32767;
}

constexpr bool InRange(Sample value, BitDepth depth) {
  return value >= SampleMin(depth) && value <= SampleMax(depth);
}

constexpr std::uint32_t ToRaw(Sample value, BitDepth depth) {
  return static_cast<std::uint32_t>(value) & FullMask(depth);
}

constexpr Sample FromRaw(std::uint32_t raw, BitDepth depth) {
  raw &= FullMask(depth);
  if (depth == BitDepth::k16 && (raw & 0x8000u) != 0) {
    return static_cast<Sample>(raw) - 0x10000;
  }
  return static_cast<Sample>(raw);
}

constexpr std::int32_t Distance(Sample a, Sample b) {
  return a > b ? a - b : b - a;
}

// Returns BitDepth for 8 or 16, throws StegError(kUnsupportedFormat)
// otherwise.
BitDepth BitDepthFromBits(int bits);

// The set of target layers for one bit depth. Always non-empty, distinct and
// within [1, bit width].
class LayerMask {
 public:
  // Throws StegError(kInvalidArgument) on an empty list, duplicates or a
  // layer outside [1, BitWidth(depth)]. Order of `layers` is irrelevant.
  static LayerMask FromLayers(std::span<const int> layers, BitDepth depth);
  static LayerMask FromLayers(std::initializer_list<int> layers,
                              BitDepth depth) {
    return FromLayers(std::span<const int>(layers.begin(), layers.size()),
                      depth);
  }
  // Raw bit mask form; bit (j-1) set for layer j.
  static LayerMask FromBits(std::uint32_t bits, BitDepth depth);

  BitDepth depth() const { return depth_; }
  std::uint32_t bits() const { return bits_; }
  // Payload bits carried per sample.
  int width() const;
  // Ascending layer numbers.
  std::vector<int> layers() const;

  // "4,5"
  std::string ToString() const;

  friend bool operator==(const LayerMask&, const LayerMask&) = default;

 private:
  LayerMask(std::uint32_t bits, BitDepth depth) : bits_(bits), depth_(depth) {}

  std::uint32_t bits_;
  BitDepth depth_;
};

// Parses a comma-separated layer list such as "1" or "4,5".
LayerMask ParseLayerMask(std::string_view text, BitDepth depth);

// k payload bits. Bit i belongs to the i-th lowest target layer.
class BitPattern {
 public:
  // Throws StegError(kInvalidArgument) if `width` is outside [0, 16] or
  // `value` has bits at or above `width`.
  BitPattern(std::uint32_t value, int width);

  std::uint32_t value() const { return value_; }
  int width() const { return width_; }
  bool bit(int i) const { return ((value_ >> i) & 1u) != 0; }

  friend bool operator==(const BitPattern&, const BitPattern&) = default;

 private:
  std::uint32_t value_;
  int width_;
};

// Scatters `pattern` onto the raw bit positions of `mask`.
std::uint32_t DepositPattern(const LayerMask& mask, const BitPattern& pattern);

BitPattern ReadBits(Sample sample, const LayerMask& mask);

// Overwrites exactly the target layers of `sample` with `pattern`.
Sample Alter(Sample sample, const LayerMask& mask, const BitPattern& pattern);

// The in-range value closest to `sample` that carries `pattern` at `mask`.
// Ties go to the smaller numeric value. Runs in O(bit width).
Sample AdjustNearest(Sample sample, const LayerMask& mask,
                     const BitPattern& pattern);

// Same contract as AdjustNearest, computed by enumerating every in-range
// value. This is the reference definition of "nearest".
Sample OracleNearest(Sample sample, const LayerMask& mask,
                     const BitPattern& pattern);

}  // namespace layersteg

#endif  // LAYERSTEG_BITPLANE_H_
