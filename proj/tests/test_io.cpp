#include "doctest.h"
#include "fieldroute/error.hpp"
#include "fieldroute/io.hpp"
#include "fieldroute/svg.hpp"

using namespace fieldroute;
using io::json;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t hits = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++hits;
  return hits;
}

SolveResult small_result(const ProblemInstance& inst, int m) {
  SolverConfig c;
  c.machine_count = m;
  c.ga.population_size = 10;
  c.ga.max_generations = 5;
  c.sa.chain_length = 5;
  return evolve(inst, c);
}

}  // namespace

TEST_CASE("config round-trips through JSON") {
  SolverConfig c;
  c.seed = 42;
  c.machine_count = 5;
  c.ga.p_m = 0.2;
  c.sa.auto_scale = true;
  c.refine.two_opt_trials = 17;
  c.features.refine = false;
  const auto back = io::config_from_json(io::config_to_json(c));
  CHECK(io::config_to_json(back) == io::config_to_json(c));
  CHECK(back.ga.p_m == 0.2);
  CHECK(back.features.refine == false);
}

TEST_CASE("partial config overlays defaults") {
  const auto c = io::load_config(R"({"ga":{"max_generations":10},"features":{"sa_seed":false}})");
  CHECK(c.ga.max_generations == 10);
  CHECK(c.ga.population_size == 200);
  CHECK_FALSE(c.features.sa_seed);
  CHECK(c.features.refine);
}

TEST_CASE("config schema violations") {
  CHECK_THROWS_AS(io::load_config(R"({"gaa":{}})"), SchemaViolation);
  CHECK_THROWS_AS(io::load_config(R"({"ga":{"p_m":"high"}})"), SchemaViolation);
  CHECK_THROWS_AS(io::load_config(R"({"ga":{"population_size":2.5}})"), SchemaViolation);
  CHECK_THROWS_AS(io::load_config(R"({"features":{"refine":1}})"), SchemaViolation);
  CHECK_THROWS_AS(io::load_config("[1,2]"), SchemaViolation);
  CHECK_THROWS_AS(io::load_config("{"), SchemaViolation);
}

TEST_CASE("result JSON carries what the plot needs") {
  Rng rng(1);
  std::uniform_real_distribution<double> coord(0, 50);
  std::vector<Point2D> pts(9);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  const auto inst = make_instance("toy", pts);
  const auto result = small_result(inst, 2);
  const json doc = io::result_to_json(result, inst);

  CHECK(doc["instance"]["task_count"] == 8);
  CHECK(io::chromosome_from_json(doc["best"]["chromosome"]) == result.best.chromosome);
  CHECK(doc["report"]["per_machine"].size() == 2);
  CHECK_FALSE(doc["report"].contains("total_fuel_l"));
  CHECK(doc["history"].size() == 5);

  const auto plot = io::plot_data_from_result(doc.dump());
  CHECK(plot.points.size() == 9);
  CHECK(plot.routes == decode_routes(result.best.chromosome));

  const std::string svg = render_routes_svg(plot);
  CHECK(count(svg, "<polyline") == 2);
  CHECK(count(svg, "class=\"task\"") == 8);
  CHECK(count(svg, "class=\"depot\"") == 1);
  CHECK(svg.find("class=\"legend\"") != std::string::npos);
}

TEST_CASE("svg viewBox is the bounding box plus five percent") {
  io::PlotData data;
  data.name = "box";
  data.points = {{0, 0}, {100, 0}, {100, 50}, {0, 50}};
  data.machines = {"1", "2"};
  data.distances = {200, 100};
  data.routes = {{1, 2}, {3}};
  const std::string svg = render_routes_svg(data);
  CHECK(svg.find("viewBox=\"-5 0 110 55\"") != std::string::npos);
  CHECK(count(svg, "<polyline") == 2);
  // y is flipped: the depot at y=0 sits at the bottom of the box.
  CHECK(svg.find("points=\"0,52.5 100,52.5 100,2.5 0,52.5\"") != std::string::npos);
}

TEST_CASE("malformed result documents") {
  CHECK_THROWS_AS(io::plot_data_from_result("{"), InputError);
  CHECK_THROWS_AS(io::plot_data_from_result(R"({"instance":{}})"), InputError);
  CHECK_THROWS_AS(
      io::plot_data_from_result(
          R"({"instance":{"points":[{"x":0,"y":0},{"x":1,"y":1}]},)"
          R"("report":{"per_machine":[{"machine":"1","distance_m":2,"route":[5]}]}})"),
      InputError);
}

TEST_CASE("fleet report fields") {
  CostReport r;
  r.per_machine = {{"A", 1500, 3.0, 0.5, {2, 1}}, {"B", 500, 1.0, 0.25, {3}}};
  r.total_distance = 2000;
  r.total_fuel_l = 4.0;
  r.total_time_h = 0.75;
  const json doc = io::report_to_json(r, {"t1", "t2", "t3"});
  CHECK(doc["per_machine"][0]["route_display"] == "t2→t1");
  CHECK(doc["per_machine"][1]["fuel_l"] == 1.0);
  CHECK(doc["total_fuel_l"] == 4.0);
  CHECK(doc["total_distance_m"] == 2000);
}

TEST_CASE("run stats csv") {
  const auto stats = summarize({1, 2}, {10, 20}, {0.5, 0.25});
  const auto csv = io::run_stats_csv(stats);
  CHECK(csv.rfind("seed,objective,wall_time_s\n1,10,0.5\n2,20,0.25\n", 0) == 0);
  CHECK(csv.find("mean,15,") != std::string::npos);
  CHECK(csv.find("stddev,") != std::string::npos);
}
