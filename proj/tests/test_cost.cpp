#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fieldroute/cost.hpp"
#include "fieldroute/error.hpp"

using namespace fieldroute;

namespace {

ProblemInstance toy() { return make_instance("toy", {{0, 0}, {3, 4}, {6, 8}}); }

MachineSpec machine2() {
  MachineSpec m;
  m.id = "2";
  m.working_width_m = 5.5;
  m.capacity_m2_per_h = 5000;
  m.road_speed_km_per_h = 10;
  m.operating_fuel_l_per_h = 5;
  m.travel_fuel_l_per_h = 2.5;
  m.turnaround_h = 0.003;
  m.operation_speed_km_per_h = 5;
  return m;
}

FieldTask task10() { return {"10", 54, 103, 5562, {0, 0}}; }

}  // namespace

TEST_CASE("route distance on the 3-4-5 toy") {
  const auto inst = toy();
  CHECK(route_distance({1, 2}, inst.distance) == doctest::Approx(20.0));
  CHECK(route_distance({1}, inst.distance) == doctest::Approx(10.0));
  CHECK(route_distance({2, 1}, inst.distance) == doctest::Approx(20.0));
  CHECK(route_distance({}, inst.distance) == 0.0);
  CHECK_THROWS_AS(route_distance({3}, inst.distance), DomainError);
  CHECK_THROWS_AS(route_distance({0}, inst.distance), DomainError);
}

TEST_CASE("total distance") {
  const auto inst = toy();
  CHECK(total_distance({{1, 2}, {1, 1}}, inst) == doctest::Approx(30.0));
  CHECK(total_distance({{1, 2}, {2}}, inst) == doctest::Approx(20.0));
  CHECK_THROWS_AS(total_distance({{1, 1}, {2}}, inst), DomainError);

  const auto flat = make_instance("flat", {{1, 1}, {1, 1}, {1, 1}});
  CHECK(total_distance({{2, 1}, {1, 1}}, flat) == 0.0);
}

TEST_CASE("fitness is the reciprocal") {
  CHECK(fitness(500) == doctest::Approx(0.002));
  CHECK(fitness(1) == 1.0);
  CHECK_THROWS_AS(fitness(0), DomainError);
}

TEST_CASE("turn count") {
  MachineSpec m;
  m.working_width_m = 6.9;
  CHECK(turn_count({"1", 70, 127, 8890, {}}, m) == 18);
  m.working_width_m = 10;
  CHECK(turn_count({"a", 1, 10, 10, {}}, m) == 0);
  CHECK(turn_count({"a", 1, 10.1, 10.1, {}}, m) == 1);
  CHECK(turn_count({"a", 1, 3, 3, {}}, m) == 0);
  // 5.5 * 3 is not exact in binary; it is still three passes.
  m.working_width_m = 5.5;
  CHECK(turn_count({"a", 1, 16.5, 16.5, {}}, m) == 2);
}

TEST_CASE("fuel and time for machine 2 on task 10") {
  const std::vector<FieldTask> tasks{task10()};
  const auto m = machine2();
  // Independent arithmetic: 2 km at 10 km/h burning 2.5 L/h, 18 turns of
  // 0.003 h at 2.5 L/h, 5562 m2 at 5000 m2/h burning 5 L/h.
  const double turns = std::ceil(103.0 / 5.5) - 1.0;
  const double fuel = 2.0 / 10.0 * 2.5 + turns * 0.003 * 2.5 + 5562.0 / 5000.0 * 5.0;
  const double time = 2.0 / 10.0 + turns * 0.003 + 5562.0 / 5000.0;
  CHECK(turns == 18.0);

  const auto f = fuel_terms(m, {1}, tasks, 2000.0);
  CHECK(f.travel == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.turning == doctest::Approx(0.135).epsilon(1e-12));
  CHECK(f.operation == doctest::Approx(5.562).epsilon(1e-12));
  CHECK(std::abs(machine_fuel(m, {1}, tasks, 2000.0) - 6.197) < 1e-6);
  CHECK(std::abs(machine_fuel(m, {1}, tasks, 2000.0) - fuel) < 1e-12);
  CHECK(std::abs(machine_time(m, {1}, tasks, 2000.0) - 1.3664) < 1e-6);
  CHECK(std::abs(machine_time(m, {1}, tasks, 2000.0) - time) < 1e-12);

  CHECK(machine_fuel(m, {1}, tasks, 0.0) == doctest::Approx(5.697));
  CHECK(machine_fuel(m, {}, tasks, 0.0) == 0.0);
  CHECK(machine_time(m, {}, tasks, 0.0) == 0.0);
  CHECK(machine_time(m, {}, tasks, 10000.0) == doctest::Approx(1.0));
}

TEST_CASE("report decomposes exactly") {
  FleetScenario s;
  s.depot = {0, 0};
  s.machines = {machine2(), machine2()};
  s.machines[1].id = "b";
  s.tasks = {{"1", 50, 100, 5000, {100, 0}},
             {"2", 60, 80, 4800, {0, 200}},
             {"3", 40, 40, 1600, {-150, -80}}};
  const auto inst = scenario_to_instance(s);
  const Chromosome ch{{2, 1, 3}, {2, 1}};
  const auto report = evaluate(ch, s, inst);
  REQUIRE(report.per_machine.size() == 2);
  double fuel = 0, time = 0, dist = 0;
  for (const auto& mc : report.per_machine) {
    fuel += *mc.fuel_l;
    time += *mc.time_h;
    dist += mc.distance;
  }
  CHECK(*report.total_fuel_l == fuel);
  CHECK(*report.total_time_h == time);
  CHECK(report.total_distance == doctest::Approx(dist));
  CHECK(report.per_machine[0].route == Route{2, 1});
  CHECK(report.per_machine[1].machine == "b");
}

TEST_CASE("distance-only report has no fuel or time") {
  const auto inst = toy();
  const auto report = evaluate({{1, 2}, {1, 1}}, inst);
  CHECK(report.total_distance == doctest::Approx(30.0));
  CHECK_FALSE(report.total_fuel_l.has_value());
  CHECK_FALSE(report.per_machine[0].time_h.has_value());
  CHECK(evaluate({{1, 2}, {2}}, inst).per_machine.size() == 1);
}

TEST_CASE("reordering within a route only moves the travel term") {
  const std::vector<FieldTask> tasks{{"1", 50, 100, 5000, {}}, {"2", 60, 80, 4800, {}},
                                     {"3", 40, 40, 1600, {}}};
  const auto m = machine2();
  const auto a = fuel_terms(m, {1, 2, 3}, tasks, 1200.0);
  const auto b = fuel_terms(m, {3, 1, 2}, tasks, 1900.0);
  CHECK(a.turning == b.turning);
  CHECK(a.operation == b.operation);
  CHECK(a.travel < b.travel);
}

TEST_CASE("appending a task never shortens a route") {
  Rng rng(21);
  std::uniform_real_distribution<double> coord(-100, 100);
  for (int k = 0; k < 200; ++k) {
    std::vector<Point2D> pts(8);
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    const auto inst = make_instance("r", pts);
    Route route{1, 2, 3, 4, 5, 6};
    std::shuffle(route.begin(), route.end(), rng);
    const double before = route_distance(route, inst.distance);
    route.insert(route.begin() + uniform_int(rng, 0, 6), 7);
    CHECK(route_distance(route, inst.distance) >= before - 1e-9);
  }
}

TEST_CASE("route display") {
  const std::vector<std::string> labels{"a", "b", "c"};
  CHECK(route_display({3, 1, 2}, labels) == "c→a→b");
  CHECK(route_display({2}, labels) == "b");
}
