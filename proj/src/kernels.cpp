#include "fieldroute/kernels.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fieldroute::kernels {

namespace {

constexpr std::uint64_t kSeedingStream = 0x5eed;

/// Row-major N x L copy of order ++ counts, the layout both diversity
/// kernels scan.
std::vector<int> flatten(std::span<const Chromosome> population, std::size_t& width) {
  width = population.empty()
              ? 0
              : population.front().order.size() + population.front().counts.size();
  std::vector<int> flat;
  flat.reserve(population.size() * width);
  for (const auto& ch : population) {
    flat.insert(flat.end(), ch.order.begin(), ch.order.end());
    flat.insert(flat.end(), ch.counts.begin(), ch.counts.end());
  }
  return flat;
}

int count_equal(const int* a, const int* b, std::size_t width) noexcept {
  int matches = 0;
  for (std::size_t k = 0; k < width; ++k) matches += (a[k] == b[k]) ? 1 : 0;
  return matches;
}

std::vector<double> to_diversity(const std::vector<long long>& row_matches,
                                 std::size_t population, std::size_t width) {
  std::vector<double> div(population, 0.0);
  if (population < 2 || width == 0) return div;
  const double denom = static_cast<double>(population - 1) * static_cast<double>(width);
  for (std::size_t i = 0; i < population; ++i) {
    div[i] = static_cast<double>(row_matches[i]) / denom;
  }
  return div;
}

Chromosome seed_one(const SeedingPlan& plan, const DistanceMatrix& distance,
                    std::size_t index) {
  Rng rng = child_stream(plan.seed, kSeedingStream, index);
  Chromosome ch = random_chromosome(plan.task_count, plan.machine_count, rng);
  if (plan.anneal) ch.order = anneal_tour(ch.order, distance, plan.anneal_params, rng);
  return ch;
}

}  // namespace

int matching_genes(const Chromosome& a, const Chromosome& b) noexcept {
  return count_equal(a.order.data(), b.order.data(), a.order.size()) +
         count_equal(a.counts.data(), b.counts.data(), a.counts.size());
}

std::vector<double> diversity_serial(std::span<const Chromosome> population) {
  const std::size_t n = population.size();
  std::vector<long long> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int m = matching_genes(population[i], population[j]);
      rows[i] += m;
      rows[j] += m;
    }
  }
  const std::size_t width =
      n == 0 ? 0 : population.front().order.size() + population.front().counts.size();
  return to_diversity(rows, n, width);
}

std::vector<double> diversity_parallel(std::span<const Chromosome> population) {
  std::size_t width = 0;
  const std::vector<int> flat = flatten(population, width);
  const auto n = static_cast<long long>(population.size());
  std::vector<long long> rows(population.size(), 0);
  const int* base = flat.data();

#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < n; ++i) {
    const int* row = base + static_cast<std::size_t>(i) * width;
    long long sum = 0;
    for (long long j = 0; j < n; ++j) {
      if (j == i) continue;
      sum += count_equal(row, base + static_cast<std::size_t>(j) * width, width);
    }
    rows[static_cast<std::size_t>(i)] = sum;
  }
  return to_diversity(rows, population.size(), width);
}

void evaluate_serial(std::span<Individual> population, const DistanceMatrix& distance) {
  for (auto& ind : population) evaluate_individual(ind, distance);
}

void evaluate_parallel(std::span<Individual> population, const DistanceMatrix& distance) {
  const auto n = static_cast<long long>(population.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    evaluate_individual(population[static_cast<std::size_t>(i)], distance);
  }
}

std::vector<Chromosome> seed_population_serial(const SeedingPlan& plan,
                                               const DistanceMatrix& distance) {
  std::vector<Chromosome> out;
  out.reserve(static_cast<std::size_t>(std::max(plan.individuals, 0)));
  for (int i = 0; i < plan.individuals; ++i) {
    out.push_back(seed_one(plan, distance, static_cast<std::size_t>(i)));
  }
  return out;
}

std::vector<Chromosome> seed_population_parallel(const SeedingPlan& plan,
                                                 const DistanceMatrix& distance) {
  // Validate once up front so no exception escapes a parallel region.
  if (plan.anneal) plan.anneal_params.validate();
  if (plan.individuals > 0) {
    Rng probe(0);
    (void)random_chromosome(plan.task_count, plan.machine_count, probe);
  }
  std::vector<Chromosome> out(static_cast<std::size_t>(std::max(plan.individuals, 0)));
  const long long n = plan.individuals;
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = seed_one(plan, distance, static_cast<std::size_t>(i));
  }
  return out;
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace fieldroute::kernels
