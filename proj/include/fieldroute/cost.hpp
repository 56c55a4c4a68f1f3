#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fieldroute/encoding.hpp"
#include "fieldroute/instance.hpp"

namespace fieldroute {

/// Depot -> route[0] -> ... -> route.back() -> depot. Throws DomainError for
/// an index outside 1..task_count. An empty route has length 0.
double route_distance(const Route& route, const DistanceMatrix& distance);

/// Same walk over order[first, first+count) without bounds checks; the hot
/// path used by the optimizer.
double segment_distance(const std::vector<int>& order, int first, int count,
                        const DistanceMatrix& distance) noexcept;

/// Per-machine route lengths of a (valid) chromosome.
std::vector<double> machine_route_costs(const Chromosome& ch,
                                        const DistanceMatrix& distance);

/// Sum of route lengths. Throws DomainError if `ch` is not a valid genome
/// for the instance's task count.
double total_distance(const Chromosome& ch, const ProblemInstance& instance);

/// Reciprocal objective. Throws DomainError for a zero objective.
double fitness(double objective);

/// U-turns for one task: passes - 1 with passes = ceil(field width /
/// working width), never negative.
int turn_count(const FieldTask& task, const MachineSpec& machine);

/// One machine's fuel (litres) or time (hours), split into its travel,
/// turning and in-field operation terms.
struct CostTerms {
  double travel = 0.0;
  double turning = 0.0;
  double operation = 0.0;

  double total() const noexcept { return travel + turning + operation; }
};

/// `route` holds 1-based task indices into `tasks`; `distance_m` is the
/// route length in metres (converted to km internally).
CostTerms fuel_terms(const MachineSpec& machine, const Route& route,
                     std::span<const FieldTask> tasks, double distance_m);
CostTerms time_terms(const MachineSpec& machine, const Route& route,
                     std::span<const FieldTask> tasks, double distance_m);

double machine_fuel(const MachineSpec& machine, const Route& route,
                    std::span<const FieldTask> tasks, double distance_m);
double machine_time(const MachineSpec& machine, const Route& route,
                    std::span<const FieldTask> tasks, double distance_m);

struct MachineCost {
  std::string machine;
  double distance = 0.0;
  std::optional<double> fuel_l;
  std::optional<double> time_h;
  Route route;
};

struct CostReport {
  std::vector<MachineCost> per_machine;
  double total_distance = 0.0;
  std::optional<double> total_fuel_l;  // fleet scenarios only
  std::optional<double> total_time_h;
};

/// Distance-only report for an abstract instance; machines are named 1..m.
CostReport evaluate(const Chromosome& ch, const ProblemInstance& instance);

/// Full report with fuel and time. `instance` must be the scenario's
/// routing view (see scenario_to_instance).
CostReport evaluate(const Chromosome& ch, const FleetScenario& scenario,
                    const ProblemInstance& instance);

/// "a→b→c" rendering of a route using the given labels (1-based lookup).
std::string route_display(const Route& route, std::span<const std::string> labels);

}  // namespace fieldroute
