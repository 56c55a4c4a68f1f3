#include "fieldroute/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fieldroute/error.hpp"
#include "fieldroute/io.hpp"
#include "fieldroute/solver.hpp"
#include "fieldroute/svg.hpp"

namespace fieldroute {

namespace {

namespace fs = std::filesystem;
using io::json;

constexpr int kExitInput = 2;
constexpr int kExitConstraint = 3;
constexpr int kExitBenchFail = 4;

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

/// Defaults, then FIELDROUTE_CONFIG, then --config.
SolverConfig base_config(const std::string& config_path) {
  SolverConfig config;
  if (const char* env = std::getenv("FIELDROUTE_CONFIG"); env && *env) {
    config = io::load_config(read_text_file(env), config);
  }
  if (!config_path.empty()) config = io::load_config(read_text_file(config_path), config);
  return config;
}

struct SolveFlags {
  std::string instance;
  int salesmen = 0;
  std::uint64_t seed = 1;
  std::string config;
  std::string out;
  bool tsplib_round = false;
  bool baseline_ga = false;
  bool att_pseudo = false;
  int depot = 1;
};

int cmd_solve(const SolveFlags& f) {
  TsplibOptions options;
  options.round = f.tsplib_round;
  options.att_pseudo_euclidean = f.att_pseudo;
  options.depot_node = f.depot;
  const ProblemInstance instance = parse_tsplib(read_text_file(f.instance), options);

  SolverConfig config = base_config(f.config);
  config.machine_count = f.salesmen;
  config.seed = f.seed;
  if (f.baseline_ga) config = SolverConfig::plain_ga(config);
  if (instance.task_count() <= config.machine_count) {
    throw InvalidDimensions(instance.name + " has " + std::to_string(instance.task_count()) +
                            " tasks; need more than " + std::to_string(config.machine_count) +
                            " salesmen");
  }

  const SolveResult result = evolve(instance, config);
  if (!f.out.empty()) write_output(f.out, io::result_to_json(result, instance).dump(2) + "\n");
  std::cout << std::setprecision(10) << result.best.objective << '\n';
  return 0;
}

struct FleetFlags {
  std::string scenario;
  std::uint64_t seed = 1;
  std::string config;
  std::string out = "-";
};

int cmd_fleet(const FleetFlags& f) {
  std::vector<std::string> warnings;
  const FleetScenario scenario = load_scenario(read_text_file(f.scenario), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  validate_scenario(scenario);

  SolverConfig config = base_config(f.config);
  config.seed = f.seed;
  const std::string name = fs::path(f.scenario).stem().string();
  const ProblemInstance instance = scenario_to_instance(scenario, name);
  const SolveResult result = solve_fleet(scenario, config);

  json doc = io::report_to_json(result.report, task_labels(instance));
  json points = json::array();
  for (const auto& p : instance.points) points.push_back({{"x", p.x}, {"y", p.y}});
  doc["instance"] = {{"name", name}, {"points", std::move(points)}, {"labels", instance.labels}};
  doc["seed"] = f.seed;
  doc["chromosome"] = io::chromosome_to_json(result.best.chromosome);
  write_output(f.out, doc.dump(2) + "\n");
  if (f.out != "-") std::cout << std::setprecision(10) << result.report.total_distance << '\n';
  return 0;
}

struct BenchFlags {
  std::string suite;
  int runs = 0;
  std::string out;
  int jobs = 1;
};

struct BenchEntry {
  std::string instance;
  int salesmen = 0;
  std::vector<std::uint64_t> seeds;
  std::optional<double> reference;
  double tolerance = 0.10;
  json config;
};

std::vector<BenchEntry> load_suite(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw SchemaViolation(std::string("suite is not valid JSON: ") + e.what());
  }
  const fs::path dir = fs::path(path).parent_path();
  std::vector<BenchEntry> entries;
  try {
    for (const auto& e : doc.at("entries")) {
      BenchEntry entry;
      fs::path instance = e.at("instance").get<std::string>();
      entry.instance = (instance.is_relative() ? dir / instance : instance).string();
      entry.salesmen = e.at("salesmen").get<int>();
      if (e.contains("seeds")) entry.seeds = e.at("seeds").get<std::vector<std::uint64_t>>();
      if (e.contains("reference")) entry.reference = e.at("reference").get<double>();
      if (e.contains("tolerance")) entry.tolerance = e.at("tolerance").get<double>();
      if (e.contains("config")) entry.config = e.at("config");
      if (entry.tolerance <= 0) throw SchemaViolation("suite tolerance must be > 0");
      entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw SchemaViolation(std::string("malformed suite: ") + e.what());
  }
  if (entries.empty()) throw SchemaViolation("suite has no entries");
  return entries;
}

int cmd_bench(const BenchFlags& f) {
  const auto entries = load_suite(f.suite);
  const SolverConfig base = base_config("");
  std::ostringstream csv;
  csv << std::setprecision(10);
  csv << "instance,salesmen,kind,seed,objective,wall_time_s,mean,min,max,stddev,"
         "reference,threshold,pass\n";
  bool all_pass = true;

  for (const auto& entry : entries) {
    const ProblemInstance instance = parse_tsplib(read_text_file(entry.instance));
    SolverConfig config = entry.config.is_null() ? base : io::config_from_json(entry.config, base);
    config.machine_count = entry.salesmen;
    std::vector<std::uint64_t> seeds = entry.seeds;
    if (f.runs > 0) {
      seeds.clear();
      for (int s = 1; s <= f.runs; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    }
    if (seeds.empty()) seeds = {1, 2, 3, 4, 5};

    const BatchResult batch = run_batch(instance, config, seeds, f.jobs);
    const RunStats& st = batch.stats;
    const std::string name = instance.name;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      csv << name << ',' << entry.salesmen << ",run," << seeds[i] << ',' << st.objectives[i]
          << ',' << st.wall_times_s[i] << ",,,,,,,\n";
    }
    csv << name << ',' << entry.salesmen << ",summary,,,," << st.mean << ',' << st.min << ','
        << st.max << ',' << st.stddev << ',';
    if (entry.reference) {
      const double threshold = *entry.reference * (1.0 + entry.tolerance);
      const bool pass = st.min <= threshold;
      all_pass = all_pass && pass;
      csv << *entry.reference << ',' << threshold << ',' << (pass ? "pass" : "fail") << '\n';
      std::cerr << name << " m=" << entry.salesmen << ": best " << st.min << " vs "
                << threshold << (pass ? " pass" : " FAIL") << '\n';
    } else {
      csv << ",,\n";
    }
  }
  write_output(f.out.empty() ? "-" : f.out, csv.str());
  return all_pass ? 0 : kExitBenchFail;
}

int cmd_plot(const std::string& result_path, const std::string& out) {
  const io::PlotData data = io::plot_data_from_result(read_text_file(result_path));
  write_output(out, render_routes_svg(data));
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Multi-machine task allocation solver"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* s = app.add_subcommand("solve", "Solve one TSPLIB instance");
  s->add_option("--instance", solve.instance, "TSPLIB file")->required();
  s->add_option("--salesmen", solve.salesmen, "Number of salesmen")->required();
  s->add_option("--seed", solve.seed, "Random seed");
  s->add_option("--config", solve.config, "Solver config JSON");
  s->add_option("--out", solve.out, "Write the result JSON here ('-' for stdout)");
  s->add_flag("--tsplib-round", solve.tsplib_round, "Round distances the TSPLIB way");
  s->add_flag("--baseline-ga", solve.baseline_ga, "Plain GA with every hybrid part off");
  s->add_flag("--att-pseudo", solve.att_pseudo, "Pseudo-Euclidean distances for ATT files");
  s->add_option("--depot", solve.depot, "File node id used as the depot");

  FleetFlags fleet;
  auto* fl = app.add_subcommand("fleet", "Allocate a fleet scenario");
  fl->add_option("--scenario", fleet.scenario, "Scenario JSON")->required();
  fl->add_option("--seed", fleet.seed, "Random seed");
  fl->add_option("--config", fleet.config, "Solver config JSON");
  fl->add_option("--out", fleet.out, "Report path, '-' for stdout");

  BenchFlags bench;
  auto* b = app.add_subcommand("bench", "Run a benchmark suite");
  b->add_option("--suite", bench.suite, "Suite JSON")->required();
  b->add_option("--runs", bench.runs, "Use seeds 1..k for every entry");
  b->add_option("--out", bench.out, "CSV path, stdout when omitted");
  b->add_option("--jobs", bench.jobs, "Parallel seeded runs")->check(CLI::PositiveNumber);

  std::string plot_result, plot_out;
  auto* p = app.add_subcommand("plot", "Render a result as SVG");
  p->add_option("--result", plot_result, "Result or report JSON")->required();
  p->add_option("--out", plot_out, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*fl) return cmd_fleet(fleet);
    if (*b) return cmd_bench(bench);
    return cmd_plot(plot_result, plot_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConstraintViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConstraint;
  } catch (const DomainError& e) {
    // Out-of-range parameter values reach here; they are bad input.
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fieldroute
