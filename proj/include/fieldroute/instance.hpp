#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fieldroute {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

/// How raw Euclidean lengths are turned into matrix entries.
enum class DistanceRule {
  kExact,       // real-valued Euclidean length
  kNearestInt,  // TSPLIB EUC_2D nint
  kCeil,        // TSPLIB CEIL_2D
  kAtt,         // TSPLIB ATT pseudo-Euclidean
};

/// Dense symmetric matrix with a zero diagonal, stored row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * dim_ + j];
  }
  void set(std::size_t i, std::size_t j, double value) noexcept {
    entries_[i * dim_ + j] = value;
    entries_[j * dim_ + i] = value;
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * dim_, dim_};
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> entries_;
};

/// Throws DomainError("NonFiniteCoordinate ...") for NaN/Inf input.
DistanceMatrix build_distance_matrix(std::span<const Point2D> points,
                                     DistanceRule rule = DistanceRule::kExact);

/// Abstract routing view of a job: index 0 is the shared depot, indices
/// 1..task_count are the tasks. Immutable once built.
struct ProblemInstance {
  std::string name;
  std::vector<Point2D> points;
  DistanceMatrix distance;
  /// Display label per point (file node id, scenario task id); may be empty.
  std::vector<std::string> labels;

  int task_count() const noexcept {
    return static_cast<int>(points.size()) - 1;
  }
};

ProblemInstance make_instance(std::string name, std::vector<Point2D> points,
                              DistanceRule rule = DistanceRule::kExact);

/// Labels of the task points 1..n, falling back to the indices themselves.
std::vector<std::string> task_labels(const ProblemInstance& instance);

struct TsplibOptions {
  /// Standard TSPLIB integer rounding (nint for EUC_2D, ceil for CEIL_2D).
  bool round = false;
  /// Use the TSPLIB pseudo-Euclidean formula for ATT files; otherwise ATT
  /// coordinates are measured with the plain Euclidean rule.
  bool att_pseudo_euclidean = false;
  /// 1-based node id (as written in the file) that becomes the depot.
  int depot_node = 1;
};

/// Parses a TSPLIB95 coordinate file (EUC_2D, CEIL_2D or ATT).
ProblemInstance parse_tsplib(std::string_view text,
                             const TsplibOptions& options = {});

/// Reads a file into a string; throws InputError when unreadable.
std::string read_text_file(const std::string& path);

// ---- fleet scenarios --------------------------------------------------------

struct MachineSpec {
  std::string id;
  double working_width_m = 0.0;
  double capacity_m2_per_h = 0.0;
  double road_speed_km_per_h = 0.0;
  double operating_fuel_l_per_h = 0.0;
  double travel_fuel_l_per_h = 0.0;
  double turnaround_h = 0.0;
  double operation_speed_km_per_h = 0.0;  // carried, not used by the cost model

  friend bool operator==(const MachineSpec&, const MachineSpec&) = default;
};

struct FieldTask {
  std::string id;
  double length_m = 0.0;
  double width_m = 0.0;
  double area_m2 = 0.0;
  Point2D anchor;

  friend bool operator==(const FieldTask&, const FieldTask&) = default;
};

struct FleetScenario {
  Point2D depot;
  std::vector<MachineSpec> machines;
  std::vector<FieldTask> tasks;

  friend bool operator==(const FleetScenario&, const FleetScenario&) = default;
};

/// Parses and validates a scenario JSON document. Soft problems (area vs
/// length*width mismatch above 5%) are appended to `warnings` when given.
FleetScenario load_scenario(std::string_view json_text,
                            std::vector<std::string>* warnings = nullptr);

/// Checks the scenario invariants; throws ConstraintViolation.
void validate_scenario(const FleetScenario& scenario);

std::string serialize_scenario(const FleetScenario& scenario);

/// Depot at index 0, task anchors at 1..n in task order, exact metres.
ProblemInstance scenario_to_instance(const FleetScenario& scenario,
                                     std::string name = "scenario");

}  // namespace fieldroute
