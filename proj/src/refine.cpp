#include "fieldroute/refine.hpp"

#include <algorithm>
#include <cmath>

#include "fieldroute/error.hpp"

namespace fieldroute {

Chromosome two_opt_move(const Chromosome& ch, int i, int j, Segment segment) {
  Chromosome out = ch;
  std::vector<int>& genes = segment == Segment::kOrder ? out.order : out.counts;
  if (i < 0 || j < i || j >= static_cast<int>(genes.size())) {
    throw DomainError("IndexOutOfRange: two_opt_move [" + std::to_string(i) + ", " +
                      std::to_string(j) + "] on a segment of length " +
                      std::to_string(genes.size()));
  }
  std::reverse(genes.begin() + i, genes.begin() + j + 1);
  return out;
}

namespace {

bool propose(Individual& current, Segment segment, const DistanceMatrix& distance,
             Rng& rng) {
  const int len = segment == Segment::kOrder ? current.chromosome.task_count()
                                             : current.chromosome.machine_count();
  if (len < 2) return false;
  const int a = uniform_int(rng, 0, len - 1);
  int b = uniform_int(rng, 0, len - 2);
  if (b >= a) ++b;
  Individual candidate;
  candidate.chromosome =
      two_opt_move(current.chromosome, std::min(a, b), std::max(a, b), segment);
  evaluate_individual(candidate, distance);
  if (candidate.objective < current.objective) {
    current = std::move(candidate);
    return true;
  }
  return false;
}

}  // namespace

Individual two_opt_improve(const Individual& ind, const DistanceMatrix& distance,
                           Rng& rng, int trials) {
  if (trials < 1) throw DomainError("two_opt_improve needs at least one trial");
  Individual current = ind;
  for (int t = 0; t < trials; ++t) {
    propose(current, Segment::kOrder, distance, rng);
    propose(current, Segment::kCounts, distance, rng);
  }
  return current;
}

bool circle_improve_segment(std::vector<int>& order, int first, int count,
                            const DistanceMatrix& distance) {
  const int last = first + count - 1;
  const auto at = [&](int pos) -> std::size_t {
    return (pos < first || pos > last) ? 0 : static_cast<std::size_t>(order[static_cast<std::size_t>(pos)]);
  };
  bool any = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = first; i < last; ++i) {
      for (int j = i + 1; j <= last; ++j) {
        const std::size_t a = at(i - 1);
        const std::size_t b = at(i);
        const std::size_t c = at(j);
        const std::size_t e = at(j + 1);
        const double before = distance(a, b) + distance(c, e);
        const double after = distance(a, c) + distance(b, e);
        if (after < before - 1e-12 * std::max(1.0, before)) {
          std::reverse(order.begin() + i, order.begin() + j + 1);
          improved = true;
          any = true;
        }
      }
    }
  }
  return any;
}

std::vector<int> modified_circle(const std::vector<int>& order,
                                 const DistanceMatrix& distance) {
  std::vector<int> out = order;
  circle_improve_segment(out, 0, static_cast<int>(out.size()), distance);
  return out;
}

Individual refine_best(const Individual& ind, const DistanceMatrix& distance, Rng& rng,
                       const RefineParams& params) {
  const int trials =
      params.two_opt_trials > 0 ? params.two_opt_trials : std::max(1, ind.chromosome.task_count());
  Individual candidate = two_opt_improve(ind, distance, rng, trials);
  int first = 0;
  for (int c : candidate.chromosome.counts) {
    circle_improve_segment(candidate.chromosome.order, first, c, distance);
    first += c;
  }
  evaluate_individual(candidate, distance);
  return candidate.objective < ind.objective ? candidate : ind;
}

}  // namespace fieldroute
