#include "fieldroute/cost.hpp"

#include <algorithm>
#include <cmath>

#include "fieldroute/error.hpp"

namespace fieldroute {

namespace {
constexpr double kMetresPerKm = 1000.0;
}

double route_distance(const Route& route, const DistanceMatrix& distance) {
  const auto n = static_cast<int>(distance.dim()) - 1;
  for (int t : route) {
    if (t < 1 || t > n) {
      throw DomainError("IndexOutOfRange: task " + std::to_string(t) +
                        " not in 1.." + std::to_string(n));
    }
  }
  if (route.empty()) return 0.0;
  return segment_distance(route, 0, static_cast<int>(route.size()), distance);
}

double segment_distance(const std::vector<int>& order, int first, int count,
                        const DistanceMatrix& distance) noexcept {
  if (count <= 0) return 0.0;
  const int* genes = order.data() + first;
  double sum = distance(0, static_cast<std::size_t>(genes[0]));
  for (int k = 1; k < count; ++k) {
    sum += distance(static_cast<std::size_t>(genes[k - 1]),
                    static_cast<std::size_t>(genes[k]));
  }
  sum += distance(static_cast<std::size_t>(genes[count - 1]), 0);
  return sum;
}

std::vector<double> machine_route_costs(const Chromosome& ch,
                                        const DistanceMatrix& distance) {
  std::vector<double> costs;
  costs.reserve(ch.counts.size());
  int first = 0;
  for (int c : ch.counts) {
    costs.push_back(segment_distance(ch.order, first, c, distance));
    first += c;
  }
  return costs;
}

double total_distance(const Chromosome& ch, const ProblemInstance& instance) {
  const auto problems =
      validate_chromosome(ch, instance.task_count(), ch.machine_count());
  if (!problems.empty() || ch.machine_count() < 1) {
    throw DomainError("InvalidChromosome: " +
                      (problems.empty() ? std::string("no machines") : problems.front()));
  }
  double sum = 0.0;
  for (double d : machine_route_costs(ch, instance.distance)) sum += d;
  return sum;
}

double fitness(double objective) {
  if (objective == 0.0) throw DomainError("ZeroObjective: fitness of a zero-length plan");
  return 1.0 / objective;
}

int turn_count(const FieldTask& task, const MachineSpec& machine) {
  if (!(machine.working_width_m > 0.0)) {
    throw DomainError("working width must be positive");
  }
  // The small slack keeps exact multiples (10 / 10) from rounding up.
  const double passes = std::ceil(task.width_m / machine.working_width_m - 1e-9);
  return std::max(0, static_cast<int>(passes) - 1);
}

namespace {

struct RouteWork {
  double turns = 0.0;
  double area = 0.0;
};

RouteWork route_work(const MachineSpec& machine, const Route& route,
                     std::span<const FieldTask> tasks) {
  RouteWork work;
  for (int t : route) {
    if (t < 1 || static_cast<std::size_t>(t) > tasks.size()) {
      throw DomainError("IndexOutOfRange: task " + std::to_string(t));
    }
    const FieldTask& task = tasks[static_cast<std::size_t>(t - 1)];
    work.turns += turn_count(task, machine);
    work.area += task.area_m2;
  }
  return work;
}

void check_finite(const CostTerms& terms) {
  if (!std::isfinite(terms.travel) || !std::isfinite(terms.turning) ||
      !std::isfinite(terms.operation)) {
    throw DomainError("UnitOverflow: non-finite cost term");
  }
}

}  // namespace

CostTerms fuel_terms(const MachineSpec& machine, const Route& route,
                     std::span<const FieldTask> tasks, double distance_m) {
  if (distance_m < 0.0) throw DomainError("negative route distance");
  const RouteWork work = route_work(machine, route, tasks);
  CostTerms terms;
  terms.travel = distance_m / kMetresPerKm / machine.road_speed_km_per_h *
                 machine.travel_fuel_l_per_h;
  terms.turning = work.turns * machine.turnaround_h * machine.travel_fuel_l_per_h;
  terms.operation =
      work.area / machine.capacity_m2_per_h * machine.operating_fuel_l_per_h;
  check_finite(terms);
  return terms;
}

CostTerms time_terms(const MachineSpec& machine, const Route& route,
                     std::span<const FieldTask> tasks, double distance_m) {
  if (distance_m < 0.0) throw DomainError("negative route distance");
  const RouteWork work = route_work(machine, route, tasks);
  CostTerms terms;
  terms.travel = distance_m / kMetresPerKm / machine.road_speed_km_per_h;
  terms.turning = work.turns * machine.turnaround_h;
  terms.operation = work.area / machine.capacity_m2_per_h;
  check_finite(terms);
  return terms;
}

double machine_fuel(const MachineSpec& machine, const Route& route,
                    std::span<const FieldTask> tasks, double distance_m) {
  return fuel_terms(machine, route, tasks, distance_m).total();
}

double machine_time(const MachineSpec& machine, const Route& route,
                    std::span<const FieldTask> tasks, double distance_m) {
  return time_terms(machine, route, tasks, distance_m).total();
}

CostReport evaluate(const Chromosome& ch, const ProblemInstance& instance) {
  CostReport report;
  report.total_distance = total_distance(ch, instance);
  const RouteSet routes = decode_routes(ch);
  report.per_machine.reserve(routes.size());
  for (std::size_t i = 0; i < routes.size(); ++i) {
    MachineCost mc;
    mc.machine = std::to_string(i + 1);
    mc.distance = route_distance(routes[i], instance.distance);
    mc.route = routes[i];
    report.per_machine.push_back(std::move(mc));
  }
  return report;
}

CostReport evaluate(const Chromosome& ch, const FleetScenario& scenario,
                    const ProblemInstance& instance) {
  if (ch.machine_count() != static_cast<int>(scenario.machines.size())) {
    throw DomainError("InvalidChromosome: machine count does not match scenario");
  }
  CostReport report = evaluate(ch, instance);
  double fuel = 0.0;
  double time = 0.0;
  for (std::size_t i = 0; i < report.per_machine.size(); ++i) {
    MachineCost& mc = report.per_machine[i];
    const MachineSpec& machine = scenario.machines[i];
    mc.machine = machine.id;
    mc.fuel_l = machine_fuel(machine, mc.route, scenario.tasks, mc.distance);
    mc.time_h = machine_time(machine, mc.route, scenario.tasks, mc.distance);
    fuel += *mc.fuel_l;
    time += *mc.time_h;
  }
  report.total_fuel_l = fuel;
  report.total_time_h = time;
  return report;
}

std::string route_display(const Route& route, std::span<const std::string> labels) {
  std::string out;
  for (std::size_t k = 0; k < route.size(); ++k) {
    if (k > 0) out += "→";
    const auto idx = static_cast<std::size_t>(route[k]);
    out += (idx >= 1 && idx <= labels.size()) ? labels[idx - 1]
                                              : std::to_string(route[k]);
  }
  return out;
}

}  // namespace fieldroute
