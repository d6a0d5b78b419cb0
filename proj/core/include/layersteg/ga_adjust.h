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

// Per-sample genetic search for a low-distortion sample carrying a fixed
// payload. The genome is the sample's raw bit string (one gene per layer);
// the target layers are frozen loci that no operator may change.

#ifndef LAYERSTEG_GA_ADJUST_H_
#define LAYERSTEG_GA_ADJUST_H_

#include <cstdint>
#include <functional>
#include <utility>

#include "layersteg/bitplane.h"
#include "layersteg/keystream.h"

namespace layersteg {

struct GaParams {
  int population_size = 16;
  int generations = 64;
  double crossover_prob = 0.8;
  // Per-gene flip probability for non-frozen loci.
  double mutation_prob = 0.2;
  int elitism_count = 1;

  friend bool operator==(const GaParams&, const GaParams&) = default;
};

// Throws StegError(kInvalidArgument) when a field is out of its domain.
void ValidateGaParams(const GaParams& params);

class SampleChromosome {
 public:
  // Builds a chromosome from `raw` bits and repairs the frozen loci.
  SampleChromosome(std::uint32_t raw, const LayerMask& mask,
                   const BitPattern& pattern);

  std::uint32_t genes() const { return genes_; }
  Sample value() const { return FromRaw(genes_, mask_.depth()); }
  const LayerMask& mask() const { return mask_; }
  const BitPattern& pattern() const { return pattern_; }
  // Locus l in [1, bit width]; locus l holds layer l.
  bool gene(int locus) const { return ((genes_ >> (locus - 1)) & 1u) != 0; }

  // Replaces the genome, then rewrites the frozen loci to the pattern.
  void Assign(std::uint32_t raw);

 private:
  std::uint32_t genes_;
  LayerMask mask_;
  BitPattern pattern_;
};

// -Distance(candidate, original). 0 is the unique maximum.
double Fitness(const SampleChromosome& candidate, Sample original);

// Single-point crossover: offspring take loci [1, cut_point] from one parent
// and (cut_point, bit width] from the other, then are repaired. Requires
// 1 <= cut_point < bit width and matching masks/patterns.
std::pair<SampleChromosome, SampleChromosome> Crossover(
    const SampleChromosome& a, const SampleChromosome& b, int cut_point);

// Flips each non-frozen locus independently with `mutation_prob`.
SampleChromosome Mutate(const SampleChromosome& c, double mutation_prob,
                        SplitMix64& rng);

// Per-generation trace for tests and diagnostics.
struct GaGenerationStats {
  int generation;  // 0 is the initial population
  double best_fitness;
  int population_size;
};
using GaObserver = std::function<void(const GaGenerationStats&)>;

// Elitist GA. The initial population holds the repaired original, the plain
// alteration and random valid chromosomes. Every generation the two fittest
// distinct chromosomes (ties: smaller value) breed offspring via crossover
// and mutation; parents and offspring then compete, the elitism_count best
// always survive, duplicates and the least fit are dropped. Stops early once
// fitness 0 is reached. Output always carries `pattern` and is never farther
// from `sample` than Alter(sample, mask, pattern).
Sample RunGa(Sample sample, const LayerMask& mask, const BitPattern& pattern,
             const GaParams& params, std::uint64_t seed,
             const GaObserver& observer = nullptr);

}  // namespace layersteg

#endif  // LAYERSTEG_GA_ADJUST_H_
