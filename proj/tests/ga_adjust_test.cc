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

#include "layersteg/ga_adjust.h"

#include <array>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "layersteg/error.h"
#include "test_util.h"

namespace layersteg {
namespace {

using testing_util::RandomMask;
using testing_util::RandomPattern;
using testing_util::RandomSample;

constexpr BitDepth k8 = BitDepth::k8;

TEST(GaParamsTest, Validation) {
  EXPECT_NO_THROW(ValidateGaParams(GaParams{}));
  GaParams p;
  p.population_size = 1;
  EXPECT_THROW(ValidateGaParams(p), StegError);
  p = GaParams{};
  p.generations = 0;
  EXPECT_THROW(ValidateGaParams(p), StegError);
  p = GaParams{};
  p.crossover_prob = 1.5;
  EXPECT_THROW(ValidateGaParams(p), StegError);
  p = GaParams{};
  p.mutation_prob = -0.1;
  EXPECT_THROW(ValidateGaParams(p), StegError);
  p = GaParams{};
  p.elitism_count = p.population_size;
  EXPECT_THROW(ValidateGaParams(p), StegError);
}

TEST(SampleChromosomeTest, RepairsFrozenLoci) {
  const LayerMask mask = LayerMask::FromLayers({5}, k8);
  const SampleChromosome c(47, mask, BitPattern(1, 1));
  EXPECT_EQ(c.genes(), 63u);
  EXPECT_TRUE(c.gene(5));
}

TEST(FitnessTest, NegativeDistance) {
  const LayerMask mask = LayerMask::FromLayers({5}, k8);
  EXPECT_EQ(Fitness(SampleChromosome(48, mask, BitPattern(1, 1)), 47), -1.0);
  EXPECT_EQ(Fitness(SampleChromosome(47, mask, BitPattern(0, 1)), 47), 0.0);
  const LayerMask two = LayerMask::FromLayers({4, 5}, k8);
  EXPECT_EQ(Fitness(SampleChromosome(63, two, BitPattern(3, 2)), 39), -24.0);
}

TEST(CrossoverTest, IdenticalParents) {
  const LayerMask mask = LayerMask::FromLayers({2, 6}, k8);
  const SampleChromosome a(0b10110100, mask, BitPattern(1, 2));
  for (int cut = 1; cut < 8; ++cut) {
    const auto [x, y] = Crossover(a, a, cut);
    EXPECT_EQ(x.genes(), a.genes());
    EXPECT_EQ(y.genes(), a.genes());
  }
}

TEST(CrossoverTest, HandEvaluatedExchange) {
  // Loci 1..4 from one parent, 5..8 from the other, then locus 1 forced to 1.
  const LayerMask mask = LayerMask::FromLayers({1}, k8);
  const BitPattern one(1, 1);
  const SampleChromosome a(0b00000000, mask, one);
  const SampleChromosome b(0b11111111, mask, one);
  const auto [x, y] = Crossover(a, b, 4);
  EXPECT_EQ(x.genes(), 0b11110001u);
  EXPECT_EQ(y.genes(), 0b00001111u);
}

TEST(CrossoverTest, RejectsBadCutsAndMismatchedParents) {
  const LayerMask mask = LayerMask::FromLayers({1}, k8);
  const SampleChromosome a(0, mask, BitPattern(0, 1));
  EXPECT_THROW(Crossover(a, a, 0), StegError);
  EXPECT_THROW(Crossover(a, a, 8), StegError);
  const SampleChromosome b(0, mask, BitPattern(1, 1));
  EXPECT_THROW(Crossover(a, b, 3), StegError);
}

TEST(CrossoverTest, OffspringAlwaysCarryPattern) {
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 5000; ++trial) {
    const BitDepth depth = trial % 2 ? BitDepth::k8 : BitDepth::k16;
    const LayerMask mask = RandomMask(gen, depth, 4);
    const BitPattern pattern = RandomPattern(gen, mask);
    const SampleChromosome a(static_cast<std::uint32_t>(gen()), mask, pattern);
    const SampleChromosome b(static_cast<std::uint32_t>(gen()), mask, pattern);
    const int cut = 1 + static_cast<int>(gen() % (BitWidth(depth) - 1));
    const auto [x, y] = Crossover(a, b, cut);
    ASSERT_EQ(ReadBits(x.value(), mask), pattern);
    ASSERT_EQ(ReadBits(y.value(), mask), pattern);
  }
}

TEST(MutateTest, ForcedOutcomes) {
  const LayerMask mask = LayerMask::FromLayers({1}, k8);
  const SampleChromosome c(0b10101011, mask, BitPattern(1, 1));
  SplitMix64 rng(1);
  EXPECT_EQ(Mutate(c, 0.0, rng).genes(), c.genes());
  EXPECT_EQ(Mutate(c, 1.0, rng).genes(), 0b01010101u);
}

TEST(MutateTest, PerLocusFlipFrequency) {
  const LayerMask mask = LayerMask::FromLayers({3}, k8);
  const SampleChromosome c(0, mask, BitPattern(0, 1));
  SplitMix64 rng(77);
  std::array<int, 9> flips{};
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const SampleChromosome m = Mutate(c, 0.05, rng);
    for (int locus = 1; locus <= 8; ++locus) flips[locus] += m.gene(locus);
  }
  for (int locus = 1; locus <= 8; ++locus) {
    const double rate = static_cast<double>(flips[locus]) / trials;
    if (locus == 3) {
      EXPECT_EQ(flips[locus], 0);
    } else {
      EXPECT_GE(rate, 0.03) << "locus " << locus;
      EXPECT_LE(rate, 0.07) << "locus " << locus;
    }
  }
}

TEST(RunGaTest, WorkedExample) {
  const LayerMask mask = LayerMask::FromLayers({5}, k8);
  EXPECT_EQ(RunGa(47, mask, BitPattern(1, 1), GaParams{}, 42), 48);
}

TEST(RunGaTest, OriginalReturnedWhenAlreadyValid) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 500; ++trial) {
    const BitDepth depth = trial % 2 ? BitDepth::k8 : BitDepth::k16;
    const LayerMask mask = RandomMask(gen, depth, 3);
    const Sample s = RandomSample(gen, depth);
    GaParams params;
    params.population_size = 2 + static_cast<int>(gen() % 20);
    params.generations = 1 + static_cast<int>(gen() % 10);
    ASSERT_EQ(RunGa(s, mask, ReadBits(s, mask), params, gen()), s);
  }
}

TEST(RunGaTest, ValidNeverWorseAndMostlyOptimal) {
  std::mt19937_64 gen(13);
  int optimal = 0;
  const int trials = 1000;
  for (int trial = 0; trial < trials; ++trial) {
    const LayerMask mask = LayerMask::FromBits(
        static_cast<std::uint32_t>(1 + gen() % 255), k8);
    const BitPattern pattern = RandomPattern(gen, mask);
    const Sample s = RandomSample(gen, k8);
    const Sample out = RunGa(s, mask, pattern, GaParams{}, gen());
    ASSERT_EQ(ReadBits(out, mask), pattern);
    ASSERT_LE(Distance(out, s), Distance(Alter(s, mask, pattern), s));
    optimal += Distance(out, s) ==
               Distance(OracleNearest(s, mask, pattern), s);
  }
  EXPECT_GE(optimal, 990);
}

TEST(RunGaTest, TinyBudgetsStayValid) {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 2000; ++trial) {
    const BitDepth depth = trial % 2 ? BitDepth::k8 : BitDepth::k16;
    const LayerMask mask = RandomMask(gen, depth, 6);
    const BitPattern pattern = RandomPattern(gen, mask);
    const Sample s = RandomSample(gen, depth);
    GaParams params;
    params.population_size = 2;
    params.generations = 1;
    params.elitism_count = 1;
    params.crossover_prob = static_cast<double>(gen() % 3) / 2.0;
    params.mutation_prob = static_cast<double>(gen() % 3) / 2.0;
    const Sample out = RunGa(s, mask, pattern, params, gen());
    ASSERT_EQ(ReadBits(out, mask), pattern);
    ASSERT_LE(Distance(out, s), Distance(Alter(s, mask, pattern), s));
  }
}

TEST(RunGaTest, MonotoneAndConstantPopulation) {
  std::mt19937_64 gen(15);
  for (int trial = 0; trial < 300; ++trial) {
    const BitDepth depth = trial % 2 ? BitDepth::k8 : BitDepth::k16;
    const LayerMask mask = RandomMask(gen, depth, 4);
    const BitPattern pattern = RandomPattern(gen, mask);
    const Sample s = RandomSample(gen, depth);
    GaParams params;
    params.elitism_count = 1 + static_cast<int>(gen() % 3);
    double last = -1e18;
    int generations = 0;
    RunGa(s, mask, pattern, params, gen(), [&](const GaGenerationStats& st) {
      EXPECT_GE(st.best_fitness, last);
      EXPECT_EQ(st.population_size, params.population_size);
      last = st.best_fitness;
      ++generations;
    });
    ASSERT_GE(generations, 1);
  }
}

TEST(RunGaTest, Deterministic) {
  std::mt19937_64 gen(16);
  for (int trial = 0; trial < 200; ++trial) {
    const LayerMask mask = RandomMask(gen, BitDepth::k16, 5);
    const BitPattern pattern = RandomPattern(gen, mask);
    const Sample s = RandomSample(gen, BitDepth::k16);
    const std::uint64_t seed = gen();
    ASSERT_EQ(RunGa(s, mask, pattern, GaParams{}, seed),
              RunGa(s, mask, pattern, GaParams{}, seed));
  }
}

}  // namespace
}  // namespace layersteg
