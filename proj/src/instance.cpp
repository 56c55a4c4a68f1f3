#include "fieldroute/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "fieldroute/error.hpp"
#include "json.hpp"

namespace fieldroute {

using nlohmann::json;

DistanceMatrix::DistanceMatrix(std::size_t dim)
    : dim_(dim), entries_(dim * dim, 0.0) {}

namespace {

double nint(double x) { return std::floor(x + 0.5); }

double edge_length(const Point2D& a, const Point2D& b, DistanceRule rule) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  switch (rule) {
    case DistanceRule::kExact:
      return std::hypot(dx, dy);
    case DistanceRule::kNearestInt:
      return nint(std::hypot(dx, dy));
    case DistanceRule::kCeil:
      return std::ceil(std::hypot(dx, dy));
    case DistanceRule::kAtt: {
      const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
      const double t = nint(r);
      return t < r ? t + 1.0 : t;
    }
  }
  return 0.0;
}

}  // namespace

DistanceMatrix build_distance_matrix(std::span<const Point2D> points,
                                     DistanceRule rule) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
      throw DomainError("NonFiniteCoordinate: point " + std::to_string(i));
    }
  }
  DistanceMatrix matrix(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      matrix.set(i, j, edge_length(points[i], points[j], rule));
    }
  }
  return matrix;
}

ProblemInstance make_instance(std::string name, std::vector<Point2D> points,
                              DistanceRule rule) {
  if (points.size() < 2) {
    throw InvalidDimensions("an instance needs a depot and at least one task");
  }
  ProblemInstance instance;
  instance.name = std::move(name);
  instance.distance = build_distance_matrix(points, rule);
  instance.points = std::move(points);
  return instance;
}

std::vector<std::string> task_labels(const ProblemInstance& instance) {
  std::vector<std::string> labels;
  for (int k = 1; k <= instance.task_count(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    labels.push_back(idx < instance.labels.size() ? instance.labels[idx] : std::to_string(k));
  }
  return labels;
}

// ---- TSPLIB -------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

double parse_number(const std::string& token, int line_no) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw MalformedRecord("line " + std::to_string(line_no) +
                          ": not a number: '" + token + "'");
  }
  return value;
}

}  // namespace

ProblemInstance parse_tsplib(std::string_view text, const TsplibOptions& options) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string name = "unnamed";
  std::optional<long> dimension;
  std::optional<std::string> weight_type;
  bool in_coords = false;
  bool saw_coords = false;
  std::map<long, Point2D> nodes;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (upper(stripped) == "EOF") break;

    if (in_coords) {
      std::istringstream fields(stripped);
      std::string id_tok, x_tok, y_tok, extra;
      if (!(fields >> id_tok >> x_tok >> y_tok) || (fields >> extra)) {
        // A keyword after the coordinate block ends it.
        if (stripped.find(':') != std::string::npos ||
            std::isalpha(static_cast<unsigned char>(stripped[0]))) {
          in_coords = false;
        } else {
          throw MalformedRecord("line " + std::to_string(line_no) +
                                ": expected '<id> <x> <y>'");
        }
      } else {
        const double id = parse_number(id_tok, line_no);
        if (id != std::floor(id) || id < 1) {
          throw MalformedRecord("line " + std::to_string(line_no) +
                                ": bad node id '" + id_tok + "'");
        }
        const auto key = static_cast<long>(id);
        if (!nodes.emplace(key, Point2D{parse_number(x_tok, line_no),
                                        parse_number(y_tok, line_no)})
                 .second) {
          throw MalformedRecord("duplicate node id " + id_tok);
        }
        continue;
      }
    }

    const std::string head = upper(stripped);
    if (head.rfind("NODE_COORD_SECTION", 0) == 0) {
      in_coords = true;
      saw_coords = true;
      continue;
    }
    const auto colon = stripped.find(':');
    const std::string key =
        upper(trim(colon == std::string::npos ? stripped : stripped.substr(0, colon)));
    const std::string value =
        colon == std::string::npos ? std::string{} : trim(stripped.substr(colon + 1));
    if (key == "NAME") {
      name = value;
    } else if (key == "DIMENSION") {
      const double d = parse_number(value, line_no);
      if (d < 1 || d != std::floor(d)) {
        throw MalformedRecord("DIMENSION must be a positive integer");
      }
      dimension = static_cast<long>(d);
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = upper(value);
    } else if (key == "EDGE_WEIGHT_SECTION" || key == "DISPLAY_DATA_SECTION" ||
               key == "DEMAND_SECTION") {
      throw MalformedRecord("unsupported section " + key);
    }
    // TYPE, COMMENT and other header keywords are informational.
  }

  if (!saw_coords) throw MalformedRecord("missing NODE_COORD_SECTION");
  if (!dimension) throw MalformedRecord("missing DIMENSION");
  if (!weight_type) throw MalformedRecord("missing EDGE_WEIGHT_TYPE");

  DistanceRule rule = DistanceRule::kExact;
  if (*weight_type == "EUC_2D") {
    rule = options.round ? DistanceRule::kNearestInt : DistanceRule::kExact;
  } else if (*weight_type == "CEIL_2D") {
    rule = options.round ? DistanceRule::kCeil : DistanceRule::kExact;
  } else if (*weight_type == "ATT") {
    if (options.att_pseudo_euclidean) {
      rule = DistanceRule::kAtt;
    } else {
      rule = options.round ? DistanceRule::kNearestInt : DistanceRule::kExact;
    }
  } else {
    throw UnsupportedEdgeWeightType("EDGE_WEIGHT_TYPE " + *weight_type);
  }

  if (static_cast<long>(nodes.size()) != *dimension) {
    throw MalformedRecord("DIMENSION is " + std::to_string(*dimension) +
                          " but " + std::to_string(nodes.size()) +
                          " coordinates were read");
  }
  if (nodes.begin()->first != 1 || nodes.rbegin()->first != *dimension) {
    throw MalformedRecord("node ids must be 1.." + std::to_string(*dimension));
  }
  if (options.depot_node < 1 || options.depot_node > *dimension) {
    throw MalformedRecord("depot node " + std::to_string(options.depot_node) +
                          " is not in 1.." + std::to_string(*dimension));
  }

  std::vector<Point2D> points;
  std::vector<std::string> labels;
  points.reserve(nodes.size());
  points.push_back(nodes.at(options.depot_node));
  labels.push_back(std::to_string(options.depot_node));
  for (const auto& [id, p] : nodes) {
    if (id == options.depot_node) continue;
    points.push_back(p);
    labels.push_back(std::to_string(id));
  }
  ProblemInstance instance = make_instance(name, std::move(points), rule);
  instance.labels = std::move(labels);
  return instance;
}

std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

// ---- scenarios ---------------------------------------------------------------

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaViolation(where + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

double require_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) {
    throw SchemaViolation(where + ": \"" + key + "\" must be a number");
  }
  return v.get<double>();
}

std::string require_id(const json& obj, const std::string& where) {
  const json& v = require(obj, "id", where);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw SchemaViolation(where + ": \"id\" must be a string or an integer");
}

Point2D require_point(const json& obj, const char* key, const std::string& where) {
  const json& p = require(obj, key, where);
  const std::string inner = where + "." + key;
  return {require_number(p, "x", inner), require_number(p, "y", inner)};
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConstraintViolation(what + " must be strictly positive");
  }
}

}  // namespace

void validate_scenario(const FleetScenario& s) {
  const auto check_point = [](const Point2D& p, const std::string& what) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ConstraintViolation(what + " has a non-finite coordinate");
    }
  };
  check_point(s.depot, "depot");
  if (s.machines.empty()) throw ConstraintViolation("scenario has no machines");
  if (s.tasks.size() <= s.machines.size()) {
    throw ConstraintViolation("task count (" + std::to_string(s.tasks.size()) +
                              ") must exceed machine count (" +
                              std::to_string(s.machines.size()) + ")");
  }
  std::set<std::string> ids;
  for (const auto& m : s.machines) {
    const std::string w = "machine " + m.id;
    if (!ids.insert(m.id).second) throw ConstraintViolation("duplicate machine id " + m.id);
    require_positive(m.working_width_m, w + " working_width_m");
    require_positive(m.capacity_m2_per_h, w + " capacity_m2_per_h");
    require_positive(m.road_speed_km_per_h, w + " road_speed_km_per_h");
    require_positive(m.operating_fuel_l_per_h, w + " operating_fuel_l_per_h");
    require_positive(m.travel_fuel_l_per_h, w + " travel_fuel_l_per_h");
    require_positive(m.turnaround_h, w + " turnaround_h");
    require_positive(m.operation_speed_km_per_h, w + " operation_speed_km_per_h");
  }
  ids.clear();
  for (const auto& t : s.tasks) {
    const std::string w = "task " + t.id;
    if (!ids.insert(t.id).second) throw ConstraintViolation("duplicate task id " + t.id);
    require_positive(t.length_m, w + " length_m");
    require_positive(t.width_m, w + " width_m");
    require_positive(t.area_m2, w + " area_m2");
    check_point(t.anchor, w + " anchor");
  }
}

FleetScenario load_scenario(std::string_view json_text,
                            std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaViolation(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaViolation("scenario must be a JSON object");

  FleetScenario s;
  s.depot = require_point(doc, "depot", "scenario");

  const json& machines = require(doc, "machines", "scenario");
  if (!machines.is_array()) throw SchemaViolation("\"machines\" must be an array");
  for (std::size_t i = 0; i < machines.size(); ++i) {
    const json& m = machines[i];
    const std::string w = "machines[" + std::to_string(i) + "]";
    MachineSpec spec;
    spec.id = require_id(m, w);
    spec.working_width_m = require_number(m, "working_width_m", w);
    spec.capacity_m2_per_h = require_number(m, "capacity_m2_per_h", w);
    spec.road_speed_km_per_h = require_number(m, "road_speed_km_per_h", w);
    spec.operating_fuel_l_per_h = require_number(m, "operating_fuel_l_per_h", w);
    spec.travel_fuel_l_per_h = require_number(m, "travel_fuel_l_per_h", w);
    spec.turnaround_h = require_number(m, "turnaround_h", w);
    spec.operation_speed_km_per_h = require_number(m, "operation_speed_km_per_h", w);
    s.machines.push_back(std::move(spec));
  }

  const json& tasks = require(doc, "tasks", "scenario");
  if (!tasks.is_array()) throw SchemaViolation("\"tasks\" must be an array");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const json& t = tasks[i];
    const std::string w = "tasks[" + std::to_string(i) + "]";
    FieldTask task;
    task.id = require_id(t, w);
    task.length_m = require_number(t, "length_m", w);
    task.width_m = require_number(t, "width_m", w);
    task.area_m2 = t.contains("area_m2") ? require_number(t, "area_m2", w)
                                         : task.length_m * task.width_m;
    task.anchor = require_point(t, "anchor", w);
    s.tasks.push_back(std::move(task));
  }

  validate_scenario(s);

  if (warnings) {
    for (const auto& t : s.tasks) {
      const double rel = std::abs(t.area_m2 - t.length_m * t.width_m) / t.area_m2;
      if (rel > 0.05) {
        std::ostringstream msg;
        msg << "task " << t.id << ": area " << t.area_m2 << " differs from length*width "
            << t.length_m * t.width_m << " by " << rel * 100.0 << "%";
        warnings->push_back(msg.str());
      }
    }
  }
  return s;
}

std::string serialize_scenario(const FleetScenario& s) {
  json doc;
  doc["depot"] = {{"x", s.depot.x}, {"y", s.depot.y}};
  doc["machines"] = json::array();
  for (const auto& m : s.machines) {
    doc["machines"].push_back({{"id", m.id},
                               {"working_width_m", m.working_width_m},
                               {"capacity_m2_per_h", m.capacity_m2_per_h},
                               {"road_speed_km_per_h", m.road_speed_km_per_h},
                               {"operating_fuel_l_per_h", m.operating_fuel_l_per_h},
                               {"travel_fuel_l_per_h", m.travel_fuel_l_per_h},
                               {"turnaround_h", m.turnaround_h},
                               {"operation_speed_km_per_h", m.operation_speed_km_per_h}});
  }
  doc["tasks"] = json::array();
  for (const auto& t : s.tasks) {
    doc["tasks"].push_back({{"id", t.id},
                            {"length_m", t.length_m},
                            {"width_m", t.width_m},
                            {"area_m2", t.area_m2},
                            {"anchor", {{"x", t.anchor.x}, {"y", t.anchor.y}}}});
  }
  return doc.dump(2);
}

ProblemInstance scenario_to_instance(const FleetScenario& scenario, std::string name) {
  std::vector<Point2D> points;
  points.reserve(scenario.tasks.size() + 1);
  points.push_back(scenario.depot);
  std::vector<std::string> labels{"depot"};
  for (const auto& t : scenario.tasks) {
    points.push_back(t.anchor);
    labels.push_back(t.id);
  }
  ProblemInstance instance =
      make_instance(std::move(name), std::move(points), DistanceRule::kExact);
  instance.labels = std::move(labels);
  return instance;
}

}  // namespace fieldroute
