#include "fieldroute/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fieldroute/cost.hpp"
#include "fieldroute/error.hpp"
#include "fieldroute/kernels.hpp"

namespace fieldroute {

void GAParams::validate() const {
  if (population_size < 1) throw DomainError("ga: population_size must be >= 1");
  if (max_generations < 1) throw DomainError("ga: max_generations must be >= 1");
  if (!(0.0 <= p_c_min && p_c_min <= p_c_mid && p_c_mid <= p_c_max && p_c_max <= 1.0)) {
    throw DomainError("ga: need 0 <= p_c_min <= p_c_mid <= p_c_max <= 1");
  }
  if (!(p_m >= 0.0 && p_m <= 1.0)) throw DomainError("ga: p_m must lie in [0, 1]");
  if (!(0.0 <= tol_min && tol_min < tol_max)) {
    throw DomainError("ga: need 0 <= tol_min < tol_max");
  }
  if (tournament_size < 1) throw DomainError("ga: tournament_size must be >= 1");
  if (!(w1 >= 0.0 && w2 >= 0.0 && std::abs(w1 + w2 - 1.0) < 1e-9)) {
    throw DomainError("ga: mix weights must be nonnegative and sum to 1");
  }
  if (elitism_count < 0 || elitism_count > population_size) {
    throw DomainError("ga: elitism_count must lie in [0, population_size]");
  }
}

Individual make_individual(Chromosome ch, const DistanceMatrix& distance) {
  Individual ind;
  ind.chromosome = std::move(ch);
  evaluate_individual(ind, distance);
  return ind;
}

void evaluate_individual(Individual& ind, const DistanceMatrix& distance) {
  ind.machine_costs = machine_route_costs(ind.chromosome, distance);
  ind.objective = 0.0;
  for (double c : ind.machine_costs) ind.objective += c;
  ind.fitness = ind.objective > 0.0 ? 1.0 / ind.objective
                                    : std::numeric_limits<double>::infinity();
}

GenerationContext make_context(int gen, const GAParams& params) {
  GenerationContext ctx;
  ctx.gen = gen;
  ctx.step = adaptive_step(params.population_size, gen, params.max_generations);
  ctx.tolerance = adaptive_tolerance(gen, ctx.step, params);
  return ctx;
}

std::size_t tournament_select(std::span<const Individual> population, int k, Rng& rng) {
  if (population.empty()) throw DomainError("EmptyPopulation: nothing to select from");
  if (k < 1) throw DomainError("tournament size must be >= 1");
  const int last = static_cast<int>(population.size()) - 1;
  auto best = static_cast<std::size_t>(uniform_int(rng, 0, last));
  for (int draw = 1; draw < k; ++draw) {
    const auto idx = static_cast<std::size_t>(uniform_int(rng, 0, last));
    if (population[idx].fitness > population[best].fitness) best = idx;
  }
  return best;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double adaptive_step(int population_size, int gen, int max_generations) {
  if (population_size < 1 || max_generations < 1 || gen < 1 || gen > max_generations) {
    throw DomainError("adaptive_step: need N >= 1 and 1 <= gen <= MAXGEN");
  }
  const double log_n = std::log(static_cast<double>(population_size));
  const double progress = static_cast<double>(gen) / max_generations;
  const double r = 2.0 * log_n * progress - log_n;
  return sigmoid(r) * static_cast<double>(max_generations - gen + 1) / max_generations;
}

double overshoot(std::span<const double> machine_costs) {
  if (machine_costs.empty()) throw DomainError("overshoot of an empty cost list");
  const double max = *std::max_element(machine_costs.begin(), machine_costs.end());
  const double mean = std::accumulate(machine_costs.begin(), machine_costs.end(), 0.0) /
                      static_cast<double>(machine_costs.size());
  if (!(mean > 0.0)) throw DomainError("ZeroMeanCost: overshoot needs a positive mean");
  return std::max(0.0, (max - mean) / mean);
}

double adaptive_tolerance(int gen, double step, const GAParams& params) {
  return params.tol_min + step * gen * (params.tol_max - params.tol_min) /
                              params.max_generations;
}

double parent_crossover_prob(std::span<const double> machine_costs,
                             const GAParams& params) {
  if (machine_costs.empty()) throw DomainError("crossover probability of no routes");
  const auto [lo, hi] = std::minmax_element(machine_costs.begin(), machine_costs.end());
  const double y_min = *lo;
  const double y_max = *hi;
  if (y_max == y_min) return params.p_c_mid;
  const double y_mean = std::accumulate(machine_costs.begin(), machine_costs.end(), 0.0) /
                        static_cast<double>(machine_costs.size());
  const double p = params.p_c_min +
                   (params.p_c_max - params.p_c_min) * (y_max - y_mean) / (y_max - y_min);
  return std::clamp(p, params.p_c_min, params.p_c_max);
}

double combined_crossover_prob(double p1, double p2, double w1, double w2) {
  return w1 * p1 + w2 * p2;
}

// ---- permutation operators ---------------------------------------------------

namespace {

void check_same_shape(const Chromosome& a, const Chromosome& b) {
  if (a.order.size() != b.order.size() || a.counts.size() != b.counts.size()) {
    throw DomainError("DimensionMismatch: parents differ in shape");
  }
}

void check_window(int lo, int hi, int n) {
  if (lo < 0 || hi >= n || lo > hi) {
    throw DomainError("crossover window [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "] outside 0.." + std::to_string(n - 1));
  }
}

struct Window {
  int lo;
  int hi;
};

Window random_window(int n, Rng& rng) {
  if (n < 2) return {0, n - 1};
  const int a = uniform_int(rng, 0, n - 1);
  int b = uniform_int(rng, 0, n - 2);
  if (b >= a) ++b;
  return {std::min(a, b), std::max(a, b)};
}

int random_count_break(int m, Rng& rng) {
  return m >= 2 ? uniform_int(rng, 0, m - 2) : 0;
}

}  // namespace

void reverse_counts_after(std::vector<int>& counts, int breakpoint) {
  if (breakpoint < 0 || breakpoint > static_cast<int>(counts.size())) {
    throw DomainError("count breakpoint out of range");
  }
  std::reverse(counts.begin() + breakpoint, counts.end());
}

Chromosome ox_crossover(const Chromosome& dad, const Chromosome& mom, int lo, int hi,
                        int count_break) {
  check_same_shape(dad, mom);
  const int n = dad.task_count();
  check_window(lo, hi, n);

  Chromosome child;
  child.order.assign(static_cast<std::size_t>(n), 0);
  std::vector<char> taken(static_cast<std::size_t>(n) + 1, 0);
  for (int k = lo; k <= hi; ++k) {
    const int g = mom.order[static_cast<std::size_t>(k)];
    child.order[static_cast<std::size_t>(k)] = g;
    taken[static_cast<std::size_t>(g)] = 1;
  }
  int pos = 0;
  for (int g : dad.order) {
    if (taken[static_cast<std::size_t>(g)]) continue;
    if (pos == lo) pos = hi + 1;
    child.order[static_cast<std::size_t>(pos++)] = g;
  }
  child.counts = dad.counts;
  reverse_counts_after(child.counts, count_break);
  return child;
}

Chromosome ox_crossover(const Chromosome& dad, const Chromosome& mom, Rng& rng) {
  const Window w = random_window(dad.task_count(), rng);
  return ox_crossover(dad, mom, w.lo, w.hi, random_count_break(dad.machine_count(), rng));
}

Chromosome pmx_crossover(const Chromosome& dad, const Chromosome& mom, int lo, int hi,
                         int count_break) {
  check_same_shape(dad, mom);
  const int n = dad.task_count();
  check_window(lo, hi, n);

  // window_pos[g] = position of gene g inside mom's window, or -1.
  std::vector<int> window_pos(static_cast<std::size_t>(n) + 1, -1);
  Chromosome child;
  child.order.assign(static_cast<std::size_t>(n), 0);
  for (int k = lo; k <= hi; ++k) {
    const int g = mom.order[static_cast<std::size_t>(k)];
    child.order[static_cast<std::size_t>(k)] = g;
    window_pos[static_cast<std::size_t>(g)] = k;
  }
  for (int k = 0; k < n; ++k) {
    if (k >= lo && k <= hi) continue;
    int g = dad.order[static_cast<std::size_t>(k)];
    int hops = 0;
    while (window_pos[static_cast<std::size_t>(g)] >= 0) {
      g = dad.order[static_cast<std::size_t>(window_pos[static_cast<std::size_t>(g)])];
      if (++hops > n) throw DomainError("MappingCycleOverrun: parents are not permutations");
    }
    child.order[static_cast<std::size_t>(k)] = g;
  }
  child.counts = dad.counts;
  reverse_counts_after(child.counts, count_break);
  return child;
}

Chromosome pmx_crossover(const Chromosome& dad, const Chromosome& mom, Rng& rng) {
  const Window w = random_window(dad.task_count(), rng);
  return pmx_crossover(dad, mom, w.lo, w.hi, random_count_break(dad.machine_count(), rng));
}

void insert_before(std::vector<int>& seq, int p1, int p2) {
  const int n = static_cast<int>(seq.size());
  if (p1 < 0 || p2 < 0 || p1 >= n || p2 >= n) throw DomainError("insert position out of range");
  if (p2 > p1) {
    std::rotate(seq.begin() + p1, seq.begin() + p2, seq.begin() + p2 + 1);
  } else if (p2 < p1) {
    std::rotate(seq.begin() + p2, seq.begin() + p2 + 1, seq.begin() + p1);
  }
}

Chromosome exchange_mutation(const Chromosome& ch, int p1, int p2, int c1, int c2) {
  const int n = ch.task_count();
  const int m = ch.machine_count();
  if (p1 < 0 || p2 < 0 || p1 >= n || p2 >= n || c1 < 0 || c2 < 0 || c1 >= m || c2 >= m) {
    throw DomainError("exchange_mutation position out of range");
  }
  Chromosome out = ch;
  std::swap(out.order[static_cast<std::size_t>(p1)], out.order[static_cast<std::size_t>(p2)]);
  std::reverse(out.counts.begin() + std::min(c1, c2), out.counts.begin() + std::max(c1, c2) + 1);
  return out;
}

Chromosome exchange_mutation(const Chromosome& ch, Rng& rng) {
  const Window p = random_window(ch.task_count(), rng);
  const Window c = random_window(ch.machine_count(), rng);
  return exchange_mutation(ch, p.lo, p.hi, c.lo, c.hi);
}

Chromosome insert_mutation(const Chromosome& ch, int p1, int p2, int c1, int c2) {
  Chromosome out = ch;
  insert_before(out.order, p1, p2);
  insert_before(out.counts, c1, c2);
  return out;
}

Chromosome insert_mutation(const Chromosome& ch, Rng& rng) {
  const auto distinct_pair = [&rng](int len) -> std::pair<int, int> {
    if (len < 2) return {0, 0};
    const int a = uniform_int(rng, 0, len - 1);
    int b = uniform_int(rng, 0, len - 2);
    if (b >= a) ++b;
    return {a, b};
  };
  const auto [p1, p2] = distinct_pair(ch.task_count());
  const auto [c1, c2] = distinct_pair(ch.machine_count());
  return insert_mutation(ch, p1, p2, c1, c2);
}

// ---- adaptive mutation -------------------------------------------------------

double pairwise_similarity(const Chromosome& a, const Chromosome& b) {
  check_same_shape(a, b);
  const std::size_t len = a.order.size() + a.counts.size();
  if (len == 0) return 1.0;
  return static_cast<double>(kernels::matching_genes(a, b)) / static_cast<double>(len);
}

double individual_diversity(std::span<const Chromosome> population, std::size_t index) {
  if (population.size() < 2) throw DomainError("PopulationTooSmall: need two individuals");
  double sum = 0.0;
  for (std::size_t j = 0; j < population.size(); ++j) {
    if (j != index) sum += pairwise_similarity(population[index], population[j]);
  }
  return sum / static_cast<double>(population.size() - 1);
}

double adaptive_mutation_rate(double fit, double div, double p_m) {
  return (1.0 - fit) * p_m + div * fit;
}

std::vector<double> normalized_fitness(std::span<const Individual> population) {
  std::vector<double> fit(population.size(), 0.5);
  if (population.empty()) return fit;
  const auto [lo, hi] = std::minmax_element(
      population.begin(), population.end(),
      [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
  const double f_min = lo->fitness;
  const double f_max = hi->fitness;
  if (!(f_max > f_min) || !std::isfinite(f_max - f_min)) return fit;
  for (std::size_t i = 0; i < population.size(); ++i) {
    fit[i] = (population[i].fitness - f_min) / (f_max - f_min);
  }
  return fit;
}

// ---- population-level variation ---------------------------------------------

namespace {

double safe_overshoot(const Individual& ind) {
  double sum = 0.0;
  for (double c : ind.machine_costs) sum += c;
  return sum > 0.0 ? overshoot(ind.machine_costs) : 0.0;
}

}  // namespace

std::vector<Chromosome> adaptive_crossover(std::span<const Individual> pool,
                                           const GenerationContext& context,
                                           const GAParams& params,
                                           CrossoverPolicy policy, Rng& rng) {
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (idx.size() % 2 == 1) {
    const auto fittest = std::max_element(
        pool.begin(), pool.end(),
        [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
    idx.push_back(static_cast<std::size_t>(fittest - pool.begin()));
  }
  std::shuffle(idx.begin(), idx.end(), rng);

  std::vector<Chromosome> offspring;
  offspring.reserve(idx.size());
  for (std::size_t k = 0; k + 1 < idx.size(); k += 2) {
    const Individual& dad = pool[idx[k]];
    const Individual& mom = pool[idx[k + 1]];
    double p_c = params.p_c_mid;
    if (policy.adaptive) {
      p_c = combined_crossover_prob(parent_crossover_prob(dad.machine_costs, params),
                                    parent_crossover_prob(mom.machine_costs, params),
                                    params.w1, params.w2);
    }
    if (uniform01(rng) < p_c) {
      const auto cross = [&](const Individual& lead, const Individual& other) {
        if (policy.adaptive && !(safe_overshoot(lead) < context.tolerance)) {
          return pmx_crossover(lead.chromosome, other.chromosome, rng);
        }
        return ox_crossover(lead.chromosome, other.chromosome, rng);
      };
      offspring.push_back(cross(dad, mom));
      offspring.push_back(cross(mom, dad));
    } else {
      offspring.push_back(dad.chromosome);
      offspring.push_back(mom.chromosome);
    }
  }
  return offspring;
}

std::vector<Chromosome> adaptive_mutate(std::span<const Individual> population,
                                        const GAParams& params, MutationPolicy policy,
                                        Rng& rng) {
  std::vector<double> rate(population.size(), params.p_m);
  if (policy.adaptive) {
    const std::vector<double> fit = normalized_fitness(population);
    std::vector<double> div(population.size(), 0.0);
    if (population.size() >= 2) {
      std::vector<Chromosome> genomes;
      genomes.reserve(population.size());
      for (const auto& ind : population) genomes.push_back(ind.chromosome);
      div = kernels::diversity_parallel(genomes);
    }
    for (std::size_t i = 0; i < population.size(); ++i) {
      rate[i] = adaptive_mutation_rate(fit[i], div[i], params.p_m);
    }
  }

  std::vector<Chromosome> out;
  out.reserve(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    const Chromosome& ch = population[i].chromosome;
    if (ch.task_count() >= 2 && uniform01(rng) < rate[i]) {
      out.push_back(uniform_int(rng, 0, 1) == 0 ? exchange_mutation(ch, rng)
                                                : insert_mutation(ch, rng));
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

}  // namespace fieldroute
