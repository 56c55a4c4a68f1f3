#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fieldroute/solver.hpp"
#include "json.hpp"

namespace fieldroute::io {

using nlohmann::json;

json config_to_json(const SolverConfig& config);

/// Overlays the keys present in `doc` onto `base`. Unknown keys and wrong
/// types raise SchemaViolation.
SolverConfig config_from_json(const json& doc, SolverConfig base = {});
SolverConfig load_config(std::string_view text, SolverConfig base = {});

json chromosome_to_json(const Chromosome& ch);
Chromosome chromosome_from_json(const json& doc);

/// `labels` name the tasks 1..n for the "a→b→c" route_display field.
json report_to_json(const CostReport& report, const std::vector<std::string>& labels);

json result_to_json(const SolveResult& result, const ProblemInstance& instance);

/// What a plot needs, read back from a result document.
struct PlotData {
  std::string name;
  std::vector<Point2D> points;  // depot first
  std::vector<std::string> machines;
  std::vector<double> distances;
  RouteSet routes;
};

/// Throws InputError on malformed documents.
PlotData plot_data_from_result(std::string_view result_json);

/// seed,objective,wall_time_s rows followed by mean/min/max/stddev rows.
std::string run_stats_csv(const RunStats& stats);

}  // namespace fieldroute::io
