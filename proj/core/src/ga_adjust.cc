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

#include <algorithm>
#include <string>
#include <vector>

#include "layersteg/error.h"

namespace layersteg {
namespace {

struct Member {
  std::uint32_t genes;
  Sample value;
  std::int32_t distance;
};

// Fittest first; equal fitness ordered by smaller sample value.
bool Fitter(const Member& a, const Member& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.value < b.value;
}

std::uint32_t LowLoci(int cut_point) {
  return (std::uint32_t{1} << cut_point) - 1;
}

std::uint32_t MutateRaw(std::uint32_t genes, std::uint32_t free_loci,
                        int width, double mutation_prob, SplitMix64& rng) {
  // Draw for every locus so the stream position is independent of the mask.
  for (int i = 0; i < width; ++i) {
    const bool flip = rng.Bernoulli(mutation_prob);
    if (flip && ((free_loci >> i) & 1u)) genes ^= std::uint32_t{1} << i;
  }
  return genes;
}

// Sorts `pool` fittest first and keeps `size` members, dropping duplicate
// genomes before any distinct one. Order among equals stays deterministic.
void SurvivorSelection(std::vector<Member>& pool, std::size_t size,
                       std::vector<Member>& duplicates) {
  std::sort(pool.begin(), pool.end(), Fitter);
  duplicates.clear();
  auto last = pool.begin();
  for (auto it = pool.begin(); it != pool.end(); ++it) {
    if (it != pool.begin() && it->genes == (last - 1)->genes) {
      duplicates.push_back(*it);
    } else {
      *last++ = *it;
    }
  }
  pool.erase(last, pool.end());
  for (const Member& m : duplicates) {
    if (pool.size() >= size) break;
    pool.push_back(m);
  }
  if (pool.size() > size) pool.resize(size);
}

}  // namespace

void ValidateGaParams(const GaParams& params) {
  auto fail = [](const std::string& what) {
    throw StegError(ErrorCode::kInvalidArgument, "GA parameters: " + what);
  };
  if (params.population_size < 2) fail("population_size must be >= 2");
  if (params.generations < 1) fail("generations must be >= 1");
  if (!(params.crossover_prob >= 0.0 && params.crossover_prob <= 1.0)) {
    fail("crossover_prob must be in [0, 1]");
  }
  if (!(params.mutation_prob >= 0.0 && params.mutation_prob <= 1.0)) {
    fail("mutation_prob must be in [0, 1]");
  }
  if (params.elitism_count < 1 ||
      params.elitism_count >= params.population_size) {
    fail("elitism_count must be in [1, population_size)");
  }
}

SampleChromosome::SampleChromosome(std::uint32_t raw, const LayerMask& mask,
                                   const BitPattern& pattern)
    : genes_(0), mask_(mask), pattern_(pattern) {
  if (pattern.width() != mask.width()) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "pattern width does not match mask");
  }
  Assign(raw);
}

void SampleChromosome::Assign(std::uint32_t raw) {
  genes_ = (raw & FullMask(mask_.depth()) & ~mask_.bits()) |
           DepositPattern(mask_, pattern_);
}

double Fitness(const SampleChromosome& candidate, Sample original) {
  return -static_cast<double>(Distance(candidate.value(), original));
}

std::pair<SampleChromosome, SampleChromosome> Crossover(
    const SampleChromosome& a, const SampleChromosome& b, int cut_point) {
  if (!(a.mask() == b.mask()) || !(a.pattern() == b.pattern())) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "crossover parents disagree on mask or pattern");
  }
  const int width = BitWidth(a.mask().depth());
  if (cut_point < 1 || cut_point >= width) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "cut point " + std::to_string(cut_point) +
                        " outside [1, " + std::to_string(width - 1) + "]");
  }
  const std::uint32_t low = LowLoci(cut_point);
  SampleChromosome first = a;
  SampleChromosome second = b;
  first.Assign((a.genes() & low) | (b.genes() & ~low));
  second.Assign((b.genes() & low) | (a.genes() & ~low));
  return {first, second};
}

SampleChromosome Mutate(const SampleChromosome& c, double mutation_prob,
                        SplitMix64& rng) {
  const BitDepth depth = c.mask().depth();
  SampleChromosome out = c;
  out.Assign(MutateRaw(c.genes(), FullMask(depth) & ~c.mask().bits(),
                       BitWidth(depth), mutation_prob, rng));
  return out;
}

Sample RunGa(Sample sample, const LayerMask& mask, const BitPattern& pattern,
             const GaParams& params, std::uint64_t seed,
             const GaObserver& observer) {
  ValidateGaParams(params);
  const Sample altered = Alter(sample, mask, pattern);  // validates operands

  const BitDepth depth = mask.depth();
  const int width = BitWidth(depth);
  const std::uint32_t full = FullMask(depth);
  const std::uint32_t free_loci = full & ~mask.bits();
  const std::uint32_t fixed = DepositPattern(mask, pattern);
  auto make = [&](std::uint32_t raw) {
    const std::uint32_t genes = (raw & free_loci) | fixed;
    const Sample value = FromRaw(genes, depth);
    return Member{genes, value, Distance(value, sample)};
  };

  SplitMix64 rng(seed);
  const auto size = static_cast<std::size_t>(params.population_size);
  std::vector<Member> population;
  population.reserve(size);
  // The repaired original equals the alteration; both are kept so the
  // initial population mirrors "original sample and altered sample".
  population.push_back(make(ToRaw(sample, depth)));
  population.push_back(make(ToRaw(altered, depth)));
  while (population.size() < size) {
    population.push_back(make(static_cast<std::uint32_t>(rng.Next())));
  }
  std::vector<Member> duplicates;
  duplicates.reserve(2 * size);
  SurvivorSelection(population, size, duplicates);
  if (observer) {
    observer({0, -static_cast<double>(population.front().distance),
              static_cast<int>(population.size())});
  }

  std::vector<Member> next;
  next.reserve(2 * size);
  for (int generation = 1; generation <= params.generations; ++generation) {
    if (population.front().distance == 0) break;
    const Member first_parent = population[0];
    const Member second_parent = population[1];

    next.assign(population.begin(),
                population.begin() + params.elitism_count);
    while (next.size() < size) {
      std::uint32_t child_a = first_parent.genes;
      std::uint32_t child_b = second_parent.genes;
      if (width > 1 && rng.Bernoulli(params.crossover_prob)) {
        const int cut = 1 + static_cast<int>(rng.Below(width - 1));
        const std::uint32_t low = LowLoci(cut);
        child_a = (first_parent.genes & low) | (second_parent.genes & ~low);
        child_b = (second_parent.genes & low) | (first_parent.genes & ~low);
      }
      child_a = MutateRaw(child_a, free_loci, width, params.mutation_prob, rng);
      child_b = MutateRaw(child_b, free_loci, width, params.mutation_prob, rng);
      next.push_back(make(child_a));
      if (next.size() < size) next.push_back(make(child_b));
    }
    // Parents and offspring compete; the least fit are dropped.
    next.insert(next.end(), population.begin() + params.elitism_count,
                population.end());
    SurvivorSelection(next, size, duplicates);
    population.swap(next);
    if (observer) {
      observer({generation, -static_cast<double>(population.front().distance),
                static_cast<int>(population.size())});
    }
  }
  return population.front().value;
}

}  // namespace layersteg
