#pragma once

#include <string>
#include <vector>

#include "fieldroute/rng.hpp"

namespace fieldroute {

/// Two-segment genome. `order` is a permutation of the task indices 1..n;
/// `counts[i]` is how many consecutive genes of `order` machine i visits.
struct Chromosome {
  std::vector<int> order;
  std::vector<int> counts;

  int task_count() const noexcept { return static_cast<int>(order.size()); }
  int machine_count() const noexcept { return static_cast<int>(counts.size()); }

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

using Route = std::vector<int>;
using RouteSet = std::vector<Route>;

/// Uniform permutation plus a composition of n into m positive parts drawn
/// uniformly (m-1 distinct cut points among the n-1 gaps).
/// Throws InvalidDimensions unless n > m >= 1.
Chromosome random_chromosome(int n, int m, Rng& rng);

/// Uniform composition of n into m positive parts.
std::vector<int> random_counts(int n, int m, Rng& rng);

/// Splits `order` into consecutive routes of length counts[i].
RouteSet decode_routes(const Chromosome& ch);

/// Human-readable list of broken invariants; empty iff the genome is valid.
std::vector<std::string> validate_chromosome(const Chromosome& ch, int n, int m);

inline bool is_valid(const Chromosome& ch, int n, int m) {
  return validate_chromosome(ch, n, m).empty();
}

/// True when `order` holds each of 1..n exactly once.
bool is_permutation_of_tasks(const std::vector<int>& order, int n);

}  // namespace fieldroute
