#include "fieldroute/encoding.hpp"

#include <algorithm>
#include <numeric>

#include "fieldroute/error.hpp"

namespace fieldroute {

std::vector<int> random_counts(int n, int m, Rng& rng) {
  if (m < 1 || n < m) {
    throw InvalidDimensions("cannot split " + std::to_string(n) + " tasks over " +
                            std::to_string(m) + " machines");
  }
  // Choose m-1 distinct gaps out of 1..n-1 by a partial Fisher-Yates shuffle.
  std::vector<int> gaps(static_cast<std::size_t>(n - 1));
  std::iota(gaps.begin(), gaps.end(), 1);
  for (int i = 0; i < m - 1; ++i) {
    const int j = uniform_int(rng, i, n - 2);
    std::swap(gaps[static_cast<std::size_t>(i)], gaps[static_cast<std::size_t>(j)]);
  }
  std::vector<int> cuts(gaps.begin(), gaps.begin() + (m - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> counts;
  counts.reserve(static_cast<std::size_t>(m));
  int prev = 0;
  for (int c : cuts) {
    counts.push_back(c - prev);
    prev = c;
  }
  counts.push_back(n - prev);
  return counts;
}

Chromosome random_chromosome(int n, int m, Rng& rng) {
  if (m < 1 || n <= m) {
    throw InvalidDimensions("need task count > machine count >= 1, got n=" +
                            std::to_string(n) + " m=" + std::to_string(m));
  }
  Chromosome ch;
  ch.order.resize(static_cast<std::size_t>(n));
  std::iota(ch.order.begin(), ch.order.end(), 1);
  std::shuffle(ch.order.begin(), ch.order.end(), rng);
  ch.counts = random_counts(n, m, rng);
  return ch;
}

RouteSet decode_routes(const Chromosome& ch) {
  RouteSet routes;
  routes.reserve(ch.counts.size());
  auto it = ch.order.begin();
  for (int c : ch.counts) {
    routes.emplace_back(it, it + c);
    it += c;
  }
  return routes;
}

bool is_permutation_of_tasks(const std::vector<int>& order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int g : order) {
    if (g < 1 || g > n || seen[static_cast<std::size_t>(g)]) return false;
    seen[static_cast<std::size_t>(g)] = 1;
  }
  return true;
}

std::vector<std::string> validate_chromosome(const Chromosome& ch, int n, int m) {
  std::vector<std::string> violations;
  if (ch.task_count() != n) {
    violations.push_back("order has " + std::to_string(ch.task_count()) +
                         " genes, expected " + std::to_string(n));
  }
  std::vector<int> seen(static_cast<std::size_t>(std::max(n, 0)) + 1, 0);
  for (int g : ch.order) {
    if (g < 1 || g > n) {
      violations.push_back("gene " + std::to_string(g) + " out of range 1.." +
                           std::to_string(n));
    } else if (++seen[static_cast<std::size_t>(g)] == 2) {
      violations.push_back("duplicate gene " + std::to_string(g));
    }
  }
  for (int g = 1; g <= n; ++g) {
    if (seen[static_cast<std::size_t>(g)] == 0) {
      violations.push_back("missing gene " + std::to_string(g));
    }
  }
  if (ch.machine_count() != m) {
    violations.push_back("counts has " + std::to_string(ch.machine_count()) +
                         " entries, expected " + std::to_string(m));
  }
  long sum = 0;
  for (int c : ch.counts) {
    if (c < 1) violations.push_back("count < 1 (" + std::to_string(c) + ")");
    sum += c;
  }
  if (sum != n) {
    violations.push_back("counts sum to " + std::to_string(sum) + ", expected " +
                         std::to_string(n));
  }
  return violations;
}

}  // namespace fieldroute
