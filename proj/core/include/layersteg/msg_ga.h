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

// Set-operator genetic algorithm over a message's byte values.
//
// Individuals are vectors of byte values drawn from the message's
// [min, max] range. Fitness is the size of the intersection between an
// individual's distinct genes and the message's distinct bytes. Mutation
// injects "scarce" genes: message bytes absent from the whole population.
// The two fittest individuals breed two offspring per generation and the two
// least fit are discarded.

#ifndef LAYERSTEG_MSG_GA_H_
#define LAYERSTEG_MSG_GA_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "layersteg/keystream.h"

namespace layersteg {

struct MessageProfile {
  std::vector<int> values;
  std::set<int> distinct;
  int min_value = 0;
  int max_value = 0;
};

struct Individual {
  std::vector<int> genes;

  friend bool operator==(const Individual&, const Individual&) = default;
};

struct MsgGaParams {
  // Defaults to max(2, message length).
  std::optional<int> population_size;
  // Defaults to the number of distinct message bytes.
  std::optional<int> genes_per_individual;
  int max_generations = 10000;
  std::uint64_t seed = 0;
};

// Throws StegError(kEmptyMessage) for an empty message.
MessageProfile ProfileMessage(std::span<const std::uint8_t> message);

// `size` individuals of `genes` uniform genes in [min_value, max_value].
std::vector<Individual> InitPopulation(const MessageProfile& profile, int size,
                                       int genes, SplitMix64& rng);

// |distinct(individual) ∩ profile.distinct|
int SetFitness(const Individual& individual, const MessageProfile& profile);

// profile.distinct minus the union of every gene in `population`.
std::set<int> ScarceGenes(const MessageProfile& profile,
                          std::span<const Individual> population);

struct MsgGaGeneration {
  int generation;
  int best_fitness;
  int population_size;
};

struct EvolveResult {
  Individual best;
  int best_fitness = 0;
  int target_fitness = 0;
  int generations_used = 0;
  bool reached_optimum = false;
};

// Runs until some individual covers every distinct message byte or
// max_generations is reached. Throws StegError(kEmptyMessage) or
// StegError(kUnreachableOptimum) (genes per individual below the distinct
// count) before running, and kInvalidArgument for a population below 2.
EvolveResult Evolve(
    std::span<const std::uint8_t> message, const MsgGaParams& params,
    const std::function<void(const MsgGaGeneration&)>& observer = nullptr);

// Folds the genes of `best` into a master key:
// h = 0; for each gene g: h = DeriveSeed({h}, "msg-ga", g).
MasterKey MasterKeyFromIndividual(const Individual& best);

}  // namespace layersteg

#endif  // LAYERSTEG_MSG_GA_H_
