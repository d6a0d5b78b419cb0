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

// Keyed randomness. Everything here is normative: stego files are exchanged
// between machines, so every stream must be bit-identical across platforms.
// The exact definitions (with test vectors) are in docs/keystream.md.
//
// NOTE: XorKeystream is obfuscation, not encryption. SplitMix64 is not a
// cryptographic generator.

#ifndef LAYERSTEG_KEYSTREAM_H_
#define LAYERSTEG_KEYSTREAM_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace layersteg {

struct MasterKey {
  std::uint64_t seed = 0;

  friend bool operator==(const MasterKey&, const MasterKey&) = default;
};

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 output function (Stafford "Mix13").
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// 64-bit FNV-1a over the bytes of `text`.
constexpr std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

// SplitMix64: state += gamma; output = Mix64(state).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    state_ += kGoldenGamma;
    return Mix64(state_);
  }

  // Uniform in [0, bound) by rejection; bound must be > 0.
  std::uint64_t Below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t r = Next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double NextUnit() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  // True with probability p; p <= 0 never, p >= 1 always.
  bool Bernoulli(double p) { return NextUnit() < p; }

 private:
  std::uint64_t state_;
};

// Mix64(Mix64(Mix64(seed + gamma) ^ Fnv1a64(purpose)) ^ index).
std::uint64_t DeriveSeed(MasterKey key, std::string_view purpose,
                         std::uint64_t index);

// Fisher-Yates permutation of [0, n): for i = n-1 down to 1, swap element i
// with element Below(i + 1), drawing from SplitMix64(DeriveSeed(key,
// "permute", 0)).
std::vector<std::size_t> PermuteIndices(std::size_t n, MasterKey key);

// XORs `data` with the little-endian bytes of successive outputs of
// SplitMix64(DeriveSeed(key, "encrypt", 0)). Self-inverse.
std::vector<std::uint8_t> XorKeystream(std::span<const std::uint8_t> data,
                                       MasterKey key);

}  // namespace layersteg

#endif  // LAYERSTEG_KEYSTREAM_H_
