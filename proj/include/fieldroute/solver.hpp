#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fieldroute/anneal.hpp"
#include "fieldroute/cost.hpp"
#include "fieldroute/genetic.hpp"
#include "fieldroute/instance.hpp"
#include "fieldroute/refine.hpp"

namespace fieldroute {

/// Switches for the hybrid's components. All on is the full method; all off
/// (with fixed p_c = p_c_mid, p_m, OX only) is the plain-GA baseline.
struct FeatureFlags {
  bool sa_seed = true;
  bool adaptive_crossover = true;
  bool adaptive_mutation = true;
  bool refine = true;

  friend bool operator==(const FeatureFlags&, const FeatureFlags&) = default;
};

struct SolverConfig {
  AnnealParams sa;
  GAParams ga;
  RefineParams refine;
  FeatureFlags features;
  std::uint64_t seed = 1;
  int machine_count = 3;

  void validate() const;

  /// Same parameters with every hybrid component switched off.
  static SolverConfig plain_ga(SolverConfig base);
};

struct SolveResult {
  Individual best;
  CostReport report;
  std::vector<double> history;  // best objective after each generation
  double wall_time_s = 0.0;
  SolverConfig config;
  std::uint64_t seed = 0;
};

struct RunStats {
  std::vector<std::uint64_t> seeds;
  std::vector<double> objectives;
  std::vector<double> wall_times_s;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single run
};

struct BatchResult {
  RunStats stats;
  std::vector<SolveResult> runs;
};

/// Number of ordered assignments of n tasks to m machines that each get at
/// least one task: n! * C(n-1, m-1). Throws InvalidDimensions unless n > m >= 1.
boost::multiprecision::cpp_int search_space_size(int n, int m);

/// N evaluated individuals seeded from config.seed (see kernels::SeedingPlan).
std::vector<Individual> initialize_population(const ProblemInstance& instance,
                                              const SolverConfig& config);

/// Runs the full generational loop. Deterministic for a given config.
SolveResult evolve(const ProblemInstance& instance, const SolverConfig& config);

/// evolve on the scenario's routing view with machine_count taken from the
/// scenario; the report carries fuel and time.
SolveResult solve_fleet(const FleetScenario& scenario, SolverConfig config);

/// One evolve per seed (config.seed is replaced), spread over `jobs` threads.
/// Results do not depend on `jobs`. Throws DomainError for an empty list.
BatchResult run_batch(const ProblemInstance& instance, const SolverConfig& config,
                      const std::vector<std::uint64_t>& seeds, int jobs = 1);

RunStats summarize(std::vector<std::uint64_t> seeds, std::vector<double> objectives,
                   std::vector<double> wall_times_s);

}  // namespace fieldroute
