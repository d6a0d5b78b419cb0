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

#include "layersteg/msg_ga.h"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <string>

#include "layersteg/error.h"

namespace layersteg {
namespace {

// Replaces one random gene of `child` with a random scarce gene. When the
// population already holds every message byte, the bytes missing from this
// child are drawn instead.
void InjectScarceGene(Individual& child, std::set<int>& scarce,
                      const MessageProfile& profile, SplitMix64& rng) {
  std::set<int> local;
  std::set<int>* pool = &scarce;
  if (scarce.empty()) {
    local = ScarceGenes(profile, std::span<const Individual>(&child, 1));
    if (local.empty()) return;
    pool = &local;
  }
  const auto locus = static_cast<std::size_t>(rng.Below(child.genes.size()));
  auto pick = pool->begin();
  std::advance(pick, static_cast<std::ptrdiff_t>(rng.Below(pool->size())));
  child.genes[locus] = *pick;
  // The next offspring draws from what is still missing.
  pool->erase(pick);
}

}  // namespace

MessageProfile ProfileMessage(std::span<const std::uint8_t> message) {
  if (message.empty()) {
    throw StegError(ErrorCode::kEmptyMessage, "message is empty");
  }
  MessageProfile profile;
  profile.values.assign(message.begin(), message.end());
  profile.distinct.insert(profile.values.begin(), profile.values.end());
  profile.min_value = *profile.distinct.begin();
  profile.max_value = *profile.distinct.rbegin();
  return profile;
}

std::vector<Individual> InitPopulation(const MessageProfile& profile, int size,
                                       int genes, SplitMix64& rng) {
  const auto span = static_cast<std::uint64_t>(profile.max_value -
                                               profile.min_value + 1);
  std::vector<Individual> population(static_cast<std::size_t>(size));
  for (Individual& individual : population) {
    individual.genes.resize(static_cast<std::size_t>(genes));
    for (int& gene : individual.genes) {
      gene = profile.min_value + static_cast<int>(rng.Below(span));
    }
  }
  return population;
}

int SetFitness(const Individual& individual, const MessageProfile& profile) {
  std::set<int> seen;
  int hits = 0;
  for (int gene : individual.genes) {
    if (profile.distinct.count(gene) && seen.insert(gene).second) ++hits;
  }
  return hits;
}

std::set<int> ScarceGenes(const MessageProfile& profile,
                          std::span<const Individual> population) {
  std::set<int> scarce = profile.distinct;
  for (const Individual& individual : population) {
    for (int gene : individual.genes) scarce.erase(gene);
  }
  return scarce;
}

EvolveResult Evolve(
    std::span<const std::uint8_t> message, const MsgGaParams& params,
    const std::function<void(const MsgGaGeneration&)>& observer) {
  const MessageProfile profile = ProfileMessage(message);
  const int target = static_cast<int>(profile.distinct.size());
  const int size = params.population_size.value_or(
      std::max(2, static_cast<int>(message.size())));
  const int genes = params.genes_per_individual.value_or(target);
  if (size < 2) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "population size must be >= 2");
  }
  if (genes < 1) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "genes per individual must be >= 1");
  }
  if (params.max_generations < 0) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "max_generations must be >= 0");
  }
  if (genes < target) {
    throw StegError(ErrorCode::kUnreachableOptimum,
                    std::to_string(genes) +
                        " genes per individual cannot cover " +
                        std::to_string(target) + " distinct message bytes");
  }

  SplitMix64 rng(params.seed);
  std::vector<Individual> population =
      InitPopulation(profile, size, genes, rng);
  std::vector<int> fitness;
  fitness.reserve(population.size() + 2);
  for (const Individual& individual : population) {
    fitness.push_back(SetFitness(individual, profile));
  }

  auto best_index = [&] {
    // First maximum: earliest member wins ties.
    return static_cast<std::size_t>(
        std::max_element(fitness.begin(), fitness.end()) - fitness.begin());
  };
  auto report = [&](int generation) {
    if (observer) {
      observer({generation, fitness[best_index()],
                static_cast<int>(population.size())});
    }
  };
  report(0);

  int generation = 0;
  std::vector<std::size_t> order(population.size());
  while (fitness[best_index()] < target &&
         generation < params.max_generations) {
    ++generation;

    // Selection: the two fittest, earlier members first on ties.
    order.resize(population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return fitness[a] > fitness[b];
                     });
    const Individual& first = population[order[0]];
    const Individual& second = population[order[1]];

    Individual child_a = first;
    Individual child_b = second;
    if (genes > 1) {
      const auto cut = static_cast<std::ptrdiff_t>(
          1 + rng.Below(static_cast<std::uint64_t>(genes - 1)));
      std::copy(second.genes.begin() + cut, second.genes.end(),
                child_a.genes.begin() + cut);
      std::copy(first.genes.begin() + cut, first.genes.end(),
                child_b.genes.begin() + cut);
    }

    std::set<int> scarce = ScarceGenes(profile, population);
    InjectScarceGene(child_a, scarce, profile, rng);
    InjectScarceGene(child_b, scarce, profile, rng);

    population.push_back(std::move(child_a));
    fitness.push_back(SetFitness(population.back(), profile));
    population.push_back(std::move(child_b));
    fitness.push_back(SetFitness(population.back(), profile));

    // Discard the two least fit; among equals the oldest goes first.
    for (int drop = 0; drop < 2; ++drop) {
      const auto victim = static_cast<std::size_t>(
          std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
      population.erase(population.begin() +
                       static_cast<std::ptrdiff_t>(victim));
      fitness.erase(fitness.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    report(generation);
  }

  EvolveResult result;
  const std::size_t best = best_index();
  result.best = population[best];
  result.best_fitness = fitness[best];
  result.target_fitness = target;
  result.generations_used = generation;
  result.reached_optimum = result.best_fitness == target;
  return result;
}

MasterKey MasterKeyFromIndividual(const Individual& best) {
  std::uint64_t h = 0;
  for (int gene : best.genes) {
    h = DeriveSeed(MasterKey{h}, "msg-ga",
                   static_cast<std::uint64_t>(static_cast<std::int64_t>(gene)));
  }
  return MasterKey{h};
}

}  // namespace layersteg
