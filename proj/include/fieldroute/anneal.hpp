#pragma once

#include <vector>

#include "fieldroute/instance.hpp"
#include "fieldroute/rng.hpp"

namespace fieldroute {

/// Geometric cooling schedule: while T >= t_final run `chain_length`
/// Metropolis steps, then T <- cooling_factor * T.
struct AnnealParams {
  double t_initial = 120.0;
  double t_final = 1.0;
  int chain_length = 100;
  double cooling_factor = 0.98;
  /// For n > 500 stretch the chain to max(100, n/5) and cool at 0.95.
  bool auto_scale = false;

  /// Throws DomainError when the schedule would not terminate or is empty.
  void validate() const;
  /// Parameters actually used for a tour of `task_count` genes.
  AnnealParams effective(int task_count) const;
};

enum class PerturbKind { kSwap, kReverse, kRelocate };

/// One random move among swap / reverse / relocate (uniform choice).
/// Requires at least two genes.
std::vector<int> perturb_tour(const std::vector<int>& order, Rng& rng);
void perturb_in_place(std::vector<int>& order, Rng& rng);

/// The three primitive moves on 0-based positions; the result always
/// differs from the input when i != j.
void swap_positions(std::vector<int>& order, int i, int j);
void reverse_positions(std::vector<int>& order, int i, int j);  // inclusive
/// Moves the gene at `from` so it lands at index `to` of the result.
void relocate_position(std::vector<int>& order, int from, int to);

/// true when delta <= 0, otherwise with probability exp(-delta / temperature).
bool metropolis_accept(double delta, double temperature, Rng& rng);

/// Length of the closed tour depot -> order -> depot.
double closed_tour_length(const std::vector<int>& order, const DistanceMatrix& d);

struct AnnealTrace {
  /// Best-so-far length at the end of every temperature stage.
  std::vector<double> best_per_stage;
};

/// Simulated annealing over a single giant tour through the depot. Returns
/// the best tour seen, never longer than the input.
std::vector<int> anneal_tour(const std::vector<int>& order, const DistanceMatrix& d,
                             const AnnealParams& params, Rng& rng,
                             AnnealTrace* trace = nullptr);

}  // namespace fieldroute
