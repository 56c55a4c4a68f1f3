#pragma once

#include <vector>

#include "fieldroute/encoding.hpp"
#include "fieldroute/genetic.hpp"
#include "fieldroute/instance.hpp"
#include "fieldroute/rng.hpp"

namespace fieldroute {

enum class Segment { kOrder, kCounts };

/// Reverses positions [i, j] (0-based, inclusive) of one genome segment.
/// Throws DomainError unless 0 <= i <= j < segment length.
Chromosome two_opt_move(const Chromosome& ch, int i, int j, Segment segment);

/// `trials` rounds of one random reversal on each segment; a proposal is kept
/// only when the total distance strictly drops. Throws DomainError for
/// trials < 1.
Individual two_opt_improve(const Individual& ind, const DistanceMatrix& distance,
                           Rng& rng, int trials);

/// Applies improving inclusive reversals to order[first, first+count),
/// treated as a closed tour through the depot, until a full pass over all
/// position pairs changes nothing. Returns true if anything moved.
bool circle_improve_segment(std::vector<int>& order, int first, int count,
                            const DistanceMatrix& distance);

/// Circle modification on a whole giant tour depot -> order -> depot.
/// The result admits no single improving reversal.
std::vector<int> modified_circle(const std::vector<int>& order,
                                 const DistanceMatrix& distance);

struct RefineParams {
  /// Random 2-opt proposals per call; 0 means one per task.
  int two_opt_trials = 0;
};

/// two_opt_improve followed by circle modification of every route with the
/// counts held fixed. Returns the input unless the objective strictly drops.
Individual refine_best(const Individual& ind, const DistanceMatrix& distance, Rng& rng,
                       const RefineParams& params = {});

}  // namespace fieldroute
