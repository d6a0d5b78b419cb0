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

#include "layersteg/keystream.h"

#include <numeric>
#include <utility>

namespace layersteg {

std::uint64_t DeriveSeed(MasterKey key, std::string_view purpose,
                         std::uint64_t index) {
  const std::uint64_t a = Mix64(key.seed + kGoldenGamma);
  const std::uint64_t b = Mix64(a ^ Fnv1a64(purpose));
  return Mix64(b ^ index);
}

std::vector<std::size_t> PermuteIndices(std::size_t n, MasterKey key) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(DeriveSeed(key, "permute", 0));
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.Below(i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::vector<std::uint8_t> XorKeystream(std::span<const std::uint8_t> data,
                                       MasterKey key) {
  std::vector<std::uint8_t> out(data.begin(), data.end());
  SplitMix64 rng(DeriveSeed(key, "encrypt", 0));
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % 8 == 0) word = rng.Next();
    out[i] ^= static_cast<std::uint8_t>(word >> (8 * (i % 8)));
  }
  return out;
}

}  // namespace layersteg
