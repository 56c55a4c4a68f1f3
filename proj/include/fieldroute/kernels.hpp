#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fieldroute/anneal.hpp"
#include "fieldroute/encoding.hpp"
#include "fieldroute/genetic.hpp"
#include "fieldroute/instance.hpp"

/// Data-parallel population kernels. Each OpenMP kernel has a serial
/// reference that produces bit-identical output; the tests compare the two
/// and the benchmark target times them against each other.
namespace fieldroute::kernels {

/// Equal positions across order ++ counts. Shapes must match.
int matching_genes(const Chromosome& a, const Chromosome& b) noexcept;

/// div_i = mean similarity of chromosome i to all others. Match counts are
/// accumulated as integers, so both versions agree exactly.
std::vector<double> diversity_serial(std::span<const Chromosome> population);
std::vector<double> diversity_parallel(std::span<const Chromosome> population);

void evaluate_serial(std::span<Individual> population, const DistanceMatrix& distance);
void evaluate_parallel(std::span<Individual> population, const DistanceMatrix& distance);

struct SeedingPlan {
  int task_count = 0;
  int machine_count = 1;
  int individuals = 0;
  bool anneal = true;
  AnnealParams anneal_params;
  std::uint64_t seed = 1;
};

/// Initial genomes: individual i draws from child stream i of `seed`, so the
/// result does not depend on scheduling. With `anneal` the order segment is
/// a random permutation improved by anneal_tour; counts are always uniform.
std::vector<Chromosome> seed_population_serial(const SeedingPlan& plan,
                                               const DistanceMatrix& distance);
std::vector<Chromosome> seed_population_parallel(const SeedingPlan& plan,
                                                 const DistanceMatrix& distance);

/// Threads OpenMP would use for a parallel region (1 without OpenMP).
int max_threads() noexcept;

}  // namespace fieldroute::kernels
