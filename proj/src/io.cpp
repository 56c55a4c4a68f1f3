#include "fieldroute/io.hpp"

#include <iomanip>
#include <set>
#include <sstream>

#include "fieldroute/error.hpp"

namespace fieldroute::io {

json config_to_json(const SolverConfig& c) {
  return {
      {"seed", c.seed},
      {"salesmen", c.machine_count},
      {"sa",
       {{"t_initial", c.sa.t_initial},
        {"t_final", c.sa.t_final},
        {"chain_length", c.sa.chain_length},
        {"cooling_factor", c.sa.cooling_factor},
        {"auto_scale", c.sa.auto_scale}}},
      {"ga",
       {{"population_size", c.ga.population_size},
        {"max_generations", c.ga.max_generations},
        {"p_c_min", c.ga.p_c_min},
        {"p_c_mid", c.ga.p_c_mid},
        {"p_c_max", c.ga.p_c_max},
        {"p_m", c.ga.p_m},
        {"tol_min", c.ga.tol_min},
        {"tol_max", c.ga.tol_max},
        {"tournament_size", c.ga.tournament_size},
        {"w1", c.ga.w1},
        {"w2", c.ga.w2},
        {"elitism_count", c.ga.elitism_count}}},
      {"refine", {{"two_opt_trials", c.refine.two_opt_trials}}},
      {"features",
       {{"sa_seed", c.features.sa_seed},
        {"adaptive_crossover", c.features.adaptive_crossover},
        {"adaptive_mutation", c.features.adaptive_mutation},
        {"refine", c.features.refine}}},
  };
}

namespace {

/// Visits the keys of one JSON object, rejecting any not in `known`.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw SchemaViolation(where_ + " must be a JSON object");
  }

  template <typename T>
  void read(const char* key, T& target) {
    seen_.insert(key);
    if (!obj_.contains(key)) return;
    const json& v = obj_.at(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw SchemaViolation("");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw SchemaViolation("");
      } else {
        if (!v.is_number()) throw SchemaViolation("");
      }
      target = v.get<T>();
    } catch (const std::exception&) {
      throw SchemaViolation(where_ + "." + key + " has the wrong type");
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    return obj_.contains(key) ? &obj_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.count(key)) throw SchemaViolation(where_ + ": unknown key \"" + key + "\"");
    }
  }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> seen_;
};

}  // namespace

SolverConfig config_from_json(const json& doc, SolverConfig c) {
  ObjectReader top(doc, "config");
  top.read("seed", c.seed);
  top.read("salesmen", c.machine_count);
  if (const json* sa = top.child("sa")) {
    ObjectReader r(*sa, "config.sa");
    r.read("t_initial", c.sa.t_initial);
    r.read("t_final", c.sa.t_final);
    r.read("chain_length", c.sa.chain_length);
    r.read("cooling_factor", c.sa.cooling_factor);
    r.read("auto_scale", c.sa.auto_scale);
    r.finish();
  }
  if (const json* ga = top.child("ga")) {
    ObjectReader r(*ga, "config.ga");
    r.read("population_size", c.ga.population_size);
    r.read("max_generations", c.ga.max_generations);
    r.read("p_c_min", c.ga.p_c_min);
    r.read("p_c_mid", c.ga.p_c_mid);
    r.read("p_c_max", c.ga.p_c_max);
    r.read("p_m", c.ga.p_m);
    r.read("tol_min", c.ga.tol_min);
    r.read("tol_max", c.ga.tol_max);
    r.read("tournament_size", c.ga.tournament_size);
    r.read("w1", c.ga.w1);
    r.read("w2", c.ga.w2);
    r.read("elitism_count", c.ga.elitism_count);
    r.finish();
  }
  if (const json* refine = top.child("refine")) {
    ObjectReader r(*refine, "config.refine");
    r.read("two_opt_trials", c.refine.two_opt_trials);
    r.finish();
  }
  if (const json* features = top.child("features")) {
    ObjectReader r(*features, "config.features");
    r.read("sa_seed", c.features.sa_seed);
    r.read("adaptive_crossover", c.features.adaptive_crossover);
    r.read("adaptive_mutation", c.features.adaptive_mutation);
    r.read("refine", c.features.refine);
    r.finish();
  }
  top.finish();
  return c;
}

SolverConfig load_config(std::string_view text, SolverConfig base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaViolation(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(doc, std::move(base));
}

json chromosome_to_json(const Chromosome& ch) {
  return {{"order", ch.order}, {"counts", ch.counts}};
}

Chromosome chromosome_from_json(const json& doc) {
  try {
    Chromosome ch;
    ch.order = doc.at("order").get<std::vector<int>>();
    ch.counts = doc.at("counts").get<std::vector<int>>();
    return ch;
  } catch (const json::exception& e) {
    throw SchemaViolation(std::string("bad chromosome: ") + e.what());
  }
}

json report_to_json(const CostReport& report, const std::vector<std::string>& labels) {
  json machines = json::array();
  for (const auto& mc : report.per_machine) {
    json entry = {{"machine", mc.machine},
                  {"distance_m", mc.distance},
                  {"route", mc.route},
                  {"route_display", route_display(mc.route, labels)}};
    if (mc.fuel_l) entry["fuel_l"] = *mc.fuel_l;
    if (mc.time_h) entry["time_h"] = *mc.time_h;
    machines.push_back(std::move(entry));
  }
  json doc = {{"per_machine", std::move(machines)},
              {"total_distance_m", report.total_distance}};
  if (report.total_fuel_l) doc["total_fuel_l"] = *report.total_fuel_l;
  if (report.total_time_h) doc["total_time_h"] = *report.total_time_h;
  return doc;
}

json result_to_json(const SolveResult& result, const ProblemInstance& instance) {
  json points = json::array();
  for (const auto& p : instance.points) points.push_back({{"x", p.x}, {"y", p.y}});
  return {
      {"instance",
       {{"name", instance.name},
        {"task_count", instance.task_count()},
        {"points", std::move(points)},
        {"labels", instance.labels}}},
      {"seed", result.seed},
      {"config", config_to_json(result.config)},
      {"best",
       {{"chromosome", chromosome_to_json(result.best.chromosome)},
        {"objective", result.best.objective},
        {"machine_costs", result.best.machine_costs}}},
      {"report", report_to_json(result.report, task_labels(instance))},
      {"history", result.history},
      {"wall_time_s", result.wall_time_s},
  };
}

PlotData plot_data_from_result(std::string_view result_json) {
  PlotData data;
  try {
    const json doc = json::parse(result_json);
    const json& instance = doc.at("instance");
    data.name = instance.value("name", std::string("result"));
    for (const auto& p : instance.at("points")) {
      data.points.push_back({p.at("x").get<double>(), p.at("y").get<double>()});
    }
    // Solve results nest the report; fleet reports carry it at top level.
    const json& report = doc.contains("report") ? doc.at("report") : doc;
    for (const auto& mc : report.at("per_machine")) {
      const json& id = mc.at("machine");
      data.machines.push_back(id.is_string() ? id.get<std::string>() : id.dump());
      data.distances.push_back(mc.at("distance_m").get<double>());
      data.routes.push_back(mc.at("route").get<Route>());
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed result document: ") + e.what());
  }
  if (data.points.size() < 2) throw InputError("result has no task points");
  const auto n = static_cast<int>(data.points.size()) - 1;
  for (const auto& route : data.routes) {
    for (int t : route) {
      if (t < 1 || t > n) throw InputError("route references unknown task " + std::to_string(t));
    }
  }
  return data;
}

std::string run_stats_csv(const RunStats& stats) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "seed,objective,wall_time_s\n";
  for (std::size_t i = 0; i < stats.objectives.size(); ++i) {
    out << stats.seeds.at(i) << ',' << stats.objectives[i] << ','
        << stats.wall_times_s.at(i) << '\n';
  }
  out << "mean," << stats.mean << ",\n";
  out << "min," << stats.min << ",\n";
  out << "max," << stats.max << ",\n";
  out << "stddev," << stats.stddev << ",\n";
  return out.str();
}

}  // namespace fieldroute::io
