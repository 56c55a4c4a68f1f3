#include "fieldroute/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>

#include "fieldroute/error.hpp"
#include "fieldroute/kernels.hpp"

namespace fieldroute {

namespace {
constexpr std::uint64_t kEvolveStream = 0xe501;
}

void SolverConfig::validate() const {
  if (machine_count < 1) throw InvalidDimensions("machine count must be >= 1");
  if (features.sa_seed) sa.validate();
  ga.validate();
  if (refine.two_opt_trials < 0) throw DomainError("refine: two_opt_trials must be >= 0");
}

SolverConfig SolverConfig::plain_ga(SolverConfig base) {
  base.features = FeatureFlags{false, false, false, false};
  return base;
}

boost::multiprecision::cpp_int search_space_size(int n, int m) {
  if (m < 1 || n <= m) {
    throw InvalidDimensions("search space needs n > m >= 1, got n=" + std::to_string(n) +
                            " m=" + std::to_string(m));
  }
  using boost::multiprecision::cpp_int;
  cpp_int orders = 1;
  for (int k = 2; k <= n; ++k) orders *= k;
  // C(n-1, m-1) by the multiplicative formula; each partial product is exact.
  cpp_int splits = 1;
  for (int k = 1; k <= m - 1; ++k) {
    splits = splits * (n - m + k) / k;
  }
  return orders * splits;
}

std::vector<Individual> initialize_population(const ProblemInstance& instance,
                                              const SolverConfig& config) {
  kernels::SeedingPlan plan;
  plan.task_count = instance.task_count();
  plan.machine_count = config.machine_count;
  plan.individuals = config.ga.population_size;
  plan.anneal = config.features.sa_seed;
  plan.anneal_params = config.sa;
  plan.seed = config.seed;
  std::vector<Chromosome> genomes = kernels::seed_population_parallel(plan, instance.distance);

  std::vector<Individual> population(genomes.size());
  for (std::size_t i = 0; i < genomes.size(); ++i) {
    population[i].chromosome = std::move(genomes[i]);
  }
  kernels::evaluate_parallel(population, instance.distance);
  return population;
}

namespace {

std::size_t fittest_index(const std::vector<Individual>& population) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (population[i].fitness > population[best].fitness) best = i;
  }
  return best;
}

/// Indices sorted from fittest to least fit; ties keep index order.
std::vector<std::size_t> ranking(const std::vector<Individual>& population) {
  std::vector<std::size_t> idx(population.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return population[a].fitness > population[b].fitness;
  });
  return idx;
}

}  // namespace

SolveResult evolve(const ProblemInstance& instance, const SolverConfig& config) {
  config.validate();
  const int n = instance.task_count();
  if (n <= config.machine_count) {
    throw InvalidDimensions("task count " + std::to_string(n) +
                            " must exceed machine count " +
                            std::to_string(config.machine_count));
  }
  const auto start = std::chrono::steady_clock::now();
  const DistanceMatrix& distance = instance.distance;
  const GAParams& ga = config.ga;
  const auto pop_size = static_cast<std::size_t>(ga.population_size);

  std::vector<Individual> population = initialize_population(instance, config);
  Rng rng = child_stream(config.seed, kEvolveStream, 0);
  Individual best = population[fittest_index(population)];

  SolveResult result;
  result.history.reserve(static_cast<std::size_t>(ga.max_generations));

  for (int gen = 1; gen <= ga.max_generations; ++gen) {
    const GenerationContext context = make_context(gen, ga);

    std::vector<Individual> pool;
    pool.reserve(pop_size);
    for (std::size_t k = 0; k < pop_size; ++k) {
      pool.push_back(population[tournament_select(population, ga.tournament_size, rng)]);
    }

    std::vector<Chromosome> children = adaptive_crossover(
        pool, context, ga, CrossoverPolicy{config.features.adaptive_crossover}, rng);
    children.resize(pop_size);  // drops the duplicate added for odd pools

    std::vector<Individual> next(pop_size);
    for (std::size_t k = 0; k < pop_size; ++k) next[k].chromosome = std::move(children[k]);
    kernels::evaluate_parallel(next, distance);

    std::vector<Chromosome> mutated = adaptive_mutate(
        next, ga, MutationPolicy{config.features.adaptive_mutation}, rng);
    for (std::size_t k = 0; k < pop_size; ++k) next[k].chromosome = std::move(mutated[k]);
    kernels::evaluate_parallel(next, distance);

    // Elitism: the previous generation's best replace this generation's worst.
    const auto elite_count = static_cast<std::size_t>(ga.elitism_count);
    if (elite_count > 0) {
      const std::vector<std::size_t> old_rank = ranking(population);
      const std::vector<std::size_t> new_rank = ranking(next);
      for (std::size_t e = 0; e < elite_count; ++e) {
        next[new_rank[pop_size - 1 - e]] = population[old_rank[e]];
      }
    }

    if (config.features.refine) {
      const std::size_t top = fittest_index(next);
      next[top] = refine_best(next[top], distance, rng, config.refine);
    }

    population = std::move(next);
    const std::size_t top = fittest_index(population);
    if (population[top].objective < best.objective) best = population[top];
    result.history.push_back(best.objective);
  }

  result.best = best;
  result.report = evaluate(best.chromosome, instance);
  result.config = config;
  result.seed = config.seed;
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolveResult solve_fleet(const FleetScenario& scenario, SolverConfig config) {
  validate_scenario(scenario);
  const ProblemInstance instance = scenario_to_instance(scenario);
  config.machine_count = static_cast<int>(scenario.machines.size());
  SolveResult result = evolve(instance, config);
  result.report = evaluate(result.best.chromosome, scenario, instance);
  return result;
}

RunStats summarize(std::vector<std::uint64_t> seeds, std::vector<double> objectives,
                   std::vector<double> wall_times_s) {
  RunStats stats;
  if (!objectives.empty()) {
    const auto [lo, hi] = std::minmax_element(objectives.begin(), objectives.end());
    stats.min = *lo;
    stats.max = *hi;
    const double count = static_cast<double>(objectives.size());
    stats.mean = std::accumulate(objectives.begin(), objectives.end(), 0.0) / count;
    if (objectives.size() > 1) {
      double ss = 0.0;
      for (double v : objectives) ss += (v - stats.mean) * (v - stats.mean);
      stats.stddev = std::sqrt(ss / (count - 1.0));
    }
    // Rounding in the mean can leave it a hair outside [min, max].
    stats.mean = std::clamp(stats.mean, stats.min, stats.max);
  }
  stats.seeds = std::move(seeds);
  stats.objectives = std::move(objectives);
  stats.wall_times_s = std::move(wall_times_s);
  return stats;
}

BatchResult run_batch(const ProblemInstance& instance, const SolverConfig& config,
                      const std::vector<std::uint64_t>& seeds, int jobs) {
  if (seeds.empty()) throw DomainError("run_batch needs at least one seed");
  config.validate();
  BatchResult batch;
  batch.runs.resize(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  const auto count = static_cast<long long>(seeds.size());
  const int threads = std::max(1, jobs);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      SolverConfig run_config = config;
      run_config.seed = seeds[k];
      batch.runs[k] = evolve(instance, run_config);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> objectives;
  std::vector<double> times;
  for (const auto& run : batch.runs) {
    objectives.push_back(run.best.objective);
    times.push_back(run.wall_time_s);
  }
  batch.stats = summarize(seeds, std::move(objectives), std::move(times));
  return batch;
}

}  // namespace fieldroute
