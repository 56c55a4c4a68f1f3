#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fieldroute/encoding.hpp"
#include "fieldroute/instance.hpp"
#include "fieldroute/rng.hpp"

namespace fieldroute {

struct GAParams {
  int population_size = 200;
  int max_generations = 2000;
  double p_c_min = 0.4;
  double p_c_mid = 0.55;  // fallback when a parent's route costs are all equal
  double p_c_max = 0.85;
  double p_m = 0.1;
  double tol_min = 0.05;
  double tol_max = 0.8;
  int tournament_size = 3;
  double w1 = 0.5;
  double w2 = 0.5;
  int elitism_count = 1;

  void validate() const;
};

/// A chromosome together with its evaluation.
struct Individual {
  Chromosome chromosome;
  std::vector<double> machine_costs;  // route length per machine
  double objective = 0.0;             // sum of machine_costs
  double fitness = 0.0;               // 1 / objective
};

Individual make_individual(Chromosome ch, const DistanceMatrix& distance);
/// Recomputes costs, objective and fitness in place.
void evaluate_individual(Individual& ind, const DistanceMatrix& distance);

/// Per-generation schedule values shared by the variation operators.
struct GenerationContext {
  int gen = 1;
  double step = 0.0;       // R
  double tolerance = 0.0;  // sp
};

GenerationContext make_context(int gen, const GAParams& params);

// ---- selection ---------------------------------------------------------------

/// Draws k individuals uniformly with replacement and returns the index of the
/// fittest; ties go to the first drawn. Throws DomainError on an empty
/// population or k < 1.
std::size_t tournament_select(std::span<const Individual> population, int k, Rng& rng);

// ---- adaptive crossover schedule ---------------------------------------------

double sigmoid(double x);

/// Sigmoid step that rises then decays over the run:
/// r = 2 ln N * gen / MAXGEN - ln N,  R = sigmoid(r) * (MAXGEN - gen + 1) / MAXGEN.
double adaptive_step(int population_size, int gen, int max_generations);

/// (max - mean) / mean of one chromosome's route costs. Throws DomainError
/// when the mean is not positive.
double overshoot(std::span<const double> machine_costs);

/// sp = tol_min + R * gen * (tol_max - tol_min) / MAXGEN.
double adaptive_tolerance(int gen, double step, const GAParams& params);

/// Maps the parent's cost imbalance (y_max - y_mean) / (y_max - y_min)
/// affinely onto [p_c_min, p_c_max]; p_c_mid when all costs are equal.
double parent_crossover_prob(std::span<const double> machine_costs,
                             const GAParams& params);

double combined_crossover_prob(double p1, double p2, double w1, double w2);

// ---- permutation operators ---------------------------------------------------
// Positions are 0-based. Segment windows are inclusive [lo, hi].

/// counts[0..b) followed by reverse(counts[b..m)); multiset preserved.
void reverse_counts_after(std::vector<int>& counts, int breakpoint);

/// Order crossover: the child keeps mom's genes on [lo, hi]; the other
/// positions are filled left to right with the remaining genes in dad's
/// order. Counts come from dad and are reversed after `count_break`.
Chromosome ox_crossover(const Chromosome& dad, const Chromosome& mom, int lo, int hi,
                        int count_break);
Chromosome ox_crossover(const Chromosome& dad, const Chromosome& mom, Rng& rng);

/// Partially-mapped crossover: mom's genes on [lo, hi]; outside the window
/// dad's gene, chased through the window mapping while it collides. Counts
/// as in ox_crossover.
Chromosome pmx_crossover(const Chromosome& dad, const Chromosome& mom, int lo, int hi,
                         int count_break);
Chromosome pmx_crossover(const Chromosome& dad, const Chromosome& mom, Rng& rng);

/// Swaps order[p1] and order[p2]; reverses counts[c1..c2].
Chromosome exchange_mutation(const Chromosome& ch, int p1, int p2, int c1, int c2);
Chromosome exchange_mutation(const Chromosome& ch, Rng& rng);

/// Moves order[p2] to just before the gene originally at p1; same relocation
/// on counts with (c1, c2).
Chromosome insert_mutation(const Chromosome& ch, int p1, int p2, int c1, int c2);
Chromosome insert_mutation(const Chromosome& ch, Rng& rng);

/// Relocation used by insert_mutation on a plain sequence.
void insert_before(std::vector<int>& seq, int p1, int p2);

// ---- adaptive mutation -------------------------------------------------------

/// Fraction of equal positions over the concatenated (order ++ counts).
/// Throws DomainError when the shapes differ.
double pairwise_similarity(const Chromosome& a, const Chromosome& b);

/// Mean similarity of individual `index` to every other member. Throws
/// DomainError for populations smaller than two.
double individual_diversity(std::span<const Chromosome> population, std::size_t index);

/// P_m = (1 - fit) * p_m + div * fit.
double adaptive_mutation_rate(double fit, double div, double p_m);

/// Min-max normalized fitness; 0.5 everywhere when all fitnesses agree.
std::vector<double> normalized_fitness(std::span<const Individual> population);

// ---- population-level variation ---------------------------------------------

/// `adaptive` selects the per-pair probability and the OX/PMX switch; when
/// false every pair crosses with p_c_mid using OX only.
struct CrossoverPolicy {
  bool adaptive = true;
};

/// Pairs the pool at random. A pair crosses when a uniform draw falls below
/// P_c; each child is led by one parent whose overshoot picks OX (below sp)
/// or PMX. Odd pools get the fittest member duplicated before pairing, so
/// the result has an even size.
std::vector<Chromosome> adaptive_crossover(std::span<const Individual> pool,
                                           const GenerationContext& context,
                                           const GAParams& params,
                                           CrossoverPolicy policy, Rng& rng);

struct MutationPolicy {
  /// false: every individual mutates with the fixed rate p_m.
  bool adaptive = true;
};

/// Mutates each individual with its own rate (exchange or insert, equal odds).
std::vector<Chromosome> adaptive_mutate(std::span<const Individual> population,
                                        const GAParams& params, MutationPolicy policy,
                                        Rng& rng);

}  // namespace fieldroute
