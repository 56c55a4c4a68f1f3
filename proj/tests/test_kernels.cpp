#include <omp.h>

#include "doctest.h"
#include "fieldroute/cost.hpp"
#include "fieldroute/error.hpp"
#include "fieldroute/kernels.hpp"

using namespace fieldroute;

namespace {

ProblemInstance random_instance(int points, Rng& rng) {
  std::uniform_real_distribution<double> coord(0, 100);
  std::vector<Point2D> pts(static_cast<std::size_t>(points));
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  return make_instance("rand", pts);
}

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("matching genes counts both segments") {
  CHECK(kernels::matching_genes({{1, 2, 3}, {2, 1}}, {{1, 3, 2}, {2, 1}}) == 3);
  CHECK(kernels::matching_genes({{1, 2, 3}, {2, 1}}, {{2, 3, 1}, {1, 2}}) == 0);
}

TEST_CASE("diversity kernels agree bit for bit") {
  Threads t(4);
  Rng rng(1);
  for (int size : {2, 3, 17, 64}) {
    std::vector<Chromosome> pop;
    for (int k = 0; k < size; ++k) pop.push_back(random_chromosome(6, 2, rng));
    const auto serial = kernels::diversity_serial(pop);
    const auto parallel = kernels::diversity_parallel(pop);
    CHECK(serial == parallel);
    for (std::size_t i = 0; i < pop.size(); ++i) {
      CHECK(serial[i] == doctest::Approx(individual_diversity(pop, i)));
    }
  }
}

TEST_CASE("evaluation kernels agree") {
  Threads t(4);
  Rng rng(2);
  const auto inst = random_instance(31, rng);
  std::vector<Individual> a;
  for (int k = 0; k < 50; ++k) a.push_back({random_chromosome(30, 4, rng), {}, 0, 0});
  auto b = a;
  kernels::evaluate_serial(a, inst.distance);
  kernels::evaluate_parallel(b, inst.distance);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].objective == b[i].objective);
    CHECK(a[i].machine_costs == b[i].machine_costs);
    CHECK(a[i].objective == doctest::Approx(total_distance(a[i].chromosome, inst)));
  }
}

TEST_CASE("seeding kernels agree and do not depend on the thread count") {
  Rng rng(3);
  const auto inst = random_instance(21, rng);
  kernels::SeedingPlan plan;
  plan.task_count = 20;
  plan.machine_count = 3;
  plan.individuals = 12;
  plan.anneal_params.chain_length = 20;
  plan.seed = 99;
  const auto serial = kernels::seed_population_serial(plan, inst.distance);
  std::vector<Chromosome> one, four;
  {
    Threads t(1);
    one = kernels::seed_population_parallel(plan, inst.distance);
  }
  {
    Threads t(4);
    four = kernels::seed_population_parallel(plan, inst.distance);
  }
  CHECK(serial == one);
  CHECK(serial == four);
  for (const auto& ch : serial) CHECK(is_valid(ch, 20, 3));

  plan.anneal = false;
  const auto plain = kernels::seed_population_serial(plan, inst.distance);
  CHECK(plain.size() == 12);
  CHECK(plain != serial);
}

TEST_CASE("seeding rejects bad dimensions before spawning work") {
  Rng rng(4);
  const auto inst = random_instance(4, rng);
  kernels::SeedingPlan plan;
  plan.task_count = 3;
  plan.machine_count = 3;
  plan.individuals = 4;
  CHECK_THROWS_AS(kernels::seed_population_parallel(plan, inst.distance), InvalidDimensions);
}
