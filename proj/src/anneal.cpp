#include "fieldroute/anneal.hpp"

#include <algorithm>
#include <cmath>

#include "fieldroute/error.hpp"

namespace fieldroute {

void AnnealParams::validate() const {
  if (!(t_final > 0.0)) throw DomainError("anneal: t_final must be positive");
  if (!(t_initial >= t_final)) {
    throw DomainError("anneal: t_initial must not be below t_final");
  }
  if (chain_length < 1) throw DomainError("anneal: chain_length must be >= 1");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) {
    throw DomainError("anneal: cooling_factor must lie in (0, 1)");
  }
}

AnnealParams AnnealParams::effective(int task_count) const {
  AnnealParams p = *this;
  if (auto_scale && task_count > 500) {
    p.chain_length = std::max(100, task_count / 5);
    p.cooling_factor = 0.95;
  }
  return p;
}

void swap_positions(std::vector<int>& order, int i, int j) {
  std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
}

void reverse_positions(std::vector<int>& order, int i, int j) {
  if (i > j) std::swap(i, j);
  std::reverse(order.begin() + i, order.begin() + j + 1);
}

void relocate_position(std::vector<int>& order, int from, int to) {
  if (from < to) {
    std::rotate(order.begin() + from, order.begin() + from + 1, order.begin() + to + 1);
  } else if (from > to) {
    std::rotate(order.begin() + to, order.begin() + from, order.begin() + from + 1);
  }
}

void perturb_in_place(std::vector<int>& out, Rng& rng) {
  const int n = static_cast<int>(out.size());
  if (n < 2) throw DomainError("perturb_tour needs at least two genes");
  const int i = uniform_int(rng, 0, n - 1);
  int j = uniform_int(rng, 0, n - 2);
  if (j >= i) ++j;  // distinct positions
  switch (static_cast<PerturbKind>(uniform_int(rng, 0, 2))) {
    case PerturbKind::kSwap:
      swap_positions(out, i, j);
      break;
    case PerturbKind::kReverse:
      reverse_positions(out, i, j);
      break;
    case PerturbKind::kRelocate:
      relocate_position(out, i, j);
      break;
  }
}

std::vector<int> perturb_tour(const std::vector<int>& order, Rng& rng) {
  std::vector<int> out = order;
  perturb_in_place(out, rng);
  return out;
}

bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (!(temperature > 0.0)) {
    throw DomainError("NonPositiveTemperature: " + std::to_string(temperature));
  }
  if (delta <= 0.0) return true;
  return uniform01(rng) < std::exp(-delta / temperature);
}

double closed_tour_length(const std::vector<int>& order, const DistanceMatrix& d) {
  if (order.empty()) return 0.0;
  double sum = d(0, static_cast<std::size_t>(order.front()));
  for (std::size_t k = 1; k < order.size(); ++k) {
    sum += d(static_cast<std::size_t>(order[k - 1]), static_cast<std::size_t>(order[k]));
  }
  return sum + d(static_cast<std::size_t>(order.back()), 0);
}

std::vector<int> anneal_tour(const std::vector<int>& order, const DistanceMatrix& d,
                             const AnnealParams& params, Rng& rng,
                             AnnealTrace* trace) {
  params.validate();
  if (order.size() < 2) return order;
  const AnnealParams p = params.effective(static_cast<int>(order.size()));

  std::vector<int> current = order;
  double current_len = closed_tour_length(current, d);
  std::vector<int> best = current;
  double best_len = current_len;
  std::vector<int> candidate;

  for (double t = p.t_initial; t >= p.t_final; t *= p.cooling_factor) {
    for (int step = 0; step < p.chain_length; ++step) {
      candidate = current;
      perturb_in_place(candidate, rng);
      const double candidate_len = closed_tour_length(candidate, d);
      if (metropolis_accept(candidate_len - current_len, t, rng)) {
        std::swap(current, candidate);
        current_len = candidate_len;
        if (current_len < best_len) {
          best = current;
          best_len = current_len;
        }
      }
    }
    if (trace) trace->best_per_stage.push_back(best_len);
  }
  return best;
}

}  // namespace fieldroute
