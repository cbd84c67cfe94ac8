#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "cicrdbo/chaos.hpp"
#include "cicrdbo/crisscross.hpp"
#include "cicrdbo/errors.hpp"
#include "cicrdbo/objectives.hpp"

using namespace cicrdbo;
using Catch::Matchers::WithinRel;

namespace {

SwarmState swarm_from(const Objective& obj, std::vector<Position> positions) {
  std::vector<Individual> inds;
  for (auto& p : positions) {
    const double f = obj.evaluate(p);
    inds.push_back({p, p, f});
  }
  const std::size_t n = inds.size();
  return make_swarm(std::move(inds), RoleCounts::proportional(n), 100);
}

SwarmState random_swarm(const Objective& obj, std::size_t pop, std::uint64_t seed) {
  Rng rng(seed);
  return swarm_from(obj, uniform_population(obj.box(), pop, rng));
}

}  // namespace

TEST_CASE("horizontal_cross examples", "[crisscross]") {
  const Position xi{2.0, -7.0};
  const Position xj{4.0, 3.0};
  CHECK(horizontal_cross(xi, xj, 1, 1.0, 0.5, 0.0, 0.0).first == -7.0);
  CHECK(horizontal_cross(xi, xj, 1, 0.0, 0.5, 0.0, 0.0).first == 3.0);
  CHECK_THAT(horizontal_cross(xi, xj, 0, 0.5, 0.5, 0.1, 0.0).first, WithinRel(2.8, 1e-12));
  // The second offspring mirrors the first with the roles of i and j swapped.
  CHECK(horizontal_cross(xi, xj, 0, 0.5, 1.0, 0.0, 0.0).second == 4.0);
  CHECK_THAT(horizontal_cross(xi, xj, 0, 0.5, 0.5, 0.0, 0.1).second, WithinRel(3.2, 1e-12));
}

TEST_CASE("identical parents reproduce themselves for any c", "[crisscross]") {
  const Position x{1.25, -3.0};
  for (double c : {-1.0, -0.3, 0.0, 0.9}) {
    const auto [a, b] = horizontal_cross(x, x, 0, 0.37, 0.81, c, -c);
    CHECK(a == 1.25);
    CHECK(b == 1.25);
  }
}

TEST_CASE("vertical_cross examples", "[crisscross]") {
  const Position x{10.0, -2.0, 5.0};
  CHECK(vertical_cross(x, 0, 1, 1.0) == 10.0);
  CHECK(vertical_cross(x, 0, 1, 0.0) == -2.0);
  CHECK_THAT(vertical_cross(x, 0, 1, 0.3), WithinRel(1.6, 1e-12));
}

TEST_CASE("compete keeps the parent unless strictly beaten", "[crisscross]") {
  const Individual parent5{{0.0}, {0.0}, 5.0};
  const Individual parent3{{0.0}, {0.0}, 3.0};
  const Individual child3{{1.0}, {0.0}, 3.0};
  const Individual child5{{1.0}, {0.0}, 5.0};
  CHECK(&compete(parent5, child3) == &child3);
  CHECK(&compete(parent3, child5) == &parent3);
  CHECK(&compete(parent3, child3) == &parent3);
}

TEST_CASE("crossover params validation", "[crisscross]") {
  CHECK_NOTHROW(CrossoverParams{}.validate());
  CHECK_NOTHROW(CrossoverParams{0.0, 0.0}.validate());
  CHECK_THROWS_AS((CrossoverParams{0.5, 0.6}.validate()), ConfigError);
  CHECK_THROWS_AS((CrossoverParams{1.1, 0.6}.validate()), ConfigError);
  CHECK_THROWS_AS((CrossoverParams{1.0, -0.1}.validate()), ConfigError);
}

TEST_CASE("midpoint offspring on sphere replace at least the worse parent", "[crisscross]") {
  const auto obj = benchmark("sphere", 2);
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const Position a{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    const Position b{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    Position mi(2);
    Position mj(2);
    for (std::size_t d = 0; d < 2; ++d) {
      std::tie(mi[d], mj[d]) = horizontal_cross(a, b, d, 0.5, 0.5, 0.0, 0.0);
    }
    REQUIRE(mi == mj);
    const double fa = obj.evaluate(a);
    const double fb = obj.evaluate(b);
    const double fm = obj.evaluate(mi);
    REQUIRE(fm <= std::max(fa, fb));
    const Individual pa{a, a, fa};
    const Individual pb{b, b, fb};
    const Individual child{mi, a, fm};
    const Individual& worse = fa >= fb ? pa : pb;
    if (fa != fb) REQUIRE(&compete(worse, child) == &child);
  }
}

TEST_CASE("blend closure with zero c", "[crisscross][property]") {
  Rng rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const Position a{rng.uniform(-10, 10)};
    const Position b{rng.uniform(-10, 10)};
    const auto [mi, mj] = horizontal_cross(a, b, 0, rng.uniform(), rng.uniform(), 0.0, 0.0);
    const double lo = std::min(a[0], b[0]);
    const double hi = std::max(a[0], b[0]);
    REQUIRE(mi >= lo - 1e-12);
    REQUIRE(mi <= hi + 1e-12);
    REQUIRE(mj >= lo - 1e-12);
    REQUIRE(mj <= hi + 1e-12);
  }
}

TEST_CASE("zero probabilities leave the state unchanged", "[crisscross]") {
  const auto obj = benchmark("rastrigin", 6);
  auto state = random_swarm(obj, 9, 3);
  const auto before = state;
  Rng rng(5);
  apply_crisscross(state, obj, {0.0, 0.0}, rng);
  for (std::size_t i = 0; i < state.individuals.size(); ++i) {
    CHECK(state.individuals[i].position == before.individuals[i].position);
    CHECK(state.individuals[i].fitness == before.individuals[i].fitness);
  }
  CHECK(state.roles == before.roles);
}

TEST_CASE("no individual gets worse", "[crisscross][property]") {
  for (const char* name : {"sphere", "ackley", "griewank", "quartic"}) {
    const auto obj = benchmark(name, 10);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto state = random_swarm(obj, 30, seed);
      Rng rng(seed + 100);
      for (int pass = 0; pass < 5; ++pass) {
        const auto before = state.individuals;
        const double best_before = state.global_best.fitness;
        apply_crisscross(state, obj, {}, rng);
        for (std::size_t i = 0; i < before.size(); ++i) {
          REQUIRE(state.individuals[i].fitness <= before[i].fitness);
          REQUIRE(obj.box().contains(state.individuals[i].position));
          REQUIRE(state.individuals[i].previous_position == before[i].previous_position);
        }
        REQUIRE(state.global_best.fitness <= best_before);
      }
    }
  }
}

TEST_CASE("vertical crossover changes at most one dimension", "[crisscross][property]") {
  const auto obj = benchmark("sphere", 8);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto state = random_swarm(obj, 11, seed);
    const auto before = state.individuals;
    Rng rng(seed);
    apply_crisscross(state, obj, {0.0, 1.0}, rng);
    for (std::size_t i = 0; i < before.size(); ++i) {
      std::size_t changed = 0;
      for (std::size_t d = 0; d < 8; ++d) {
        changed += state.individuals[i].position[d] != before[i].position[d];
      }
      REQUIRE(changed <= 1);
    }
  }
}

TEST_CASE("odd population leaves exactly one individual unpaired", "[crisscross]") {
  // Replays the documented draw order on a copy of the stream: the
  // permutation, one u plus four draws per dimension for each of the k
  // pairs, then one vertical u per individual. Sphere consumes no noise.
  const auto obj = benchmark("sphere", 3);
  for (std::size_t k : {1u, 2u, 7u}) {
    const std::size_t n = 2 * k + 1;
    auto state = random_swarm(obj, n, k);
    const auto before = state.individuals;
    Rng rng(42 + k);
    Rng replay = rng;
    apply_crisscross(state, obj, {1.0, 0.0}, rng);

    const auto order = replay.permutation(n);
    for (std::size_t draw = 0; draw < k * (1 + 4 * 3) + n; ++draw) replay.next();
    CHECK(replay.next() == rng.next());
    const std::size_t loner = order.back();
    CHECK(state.individuals[loner].position == before[loner].position);
  }
}

TEST_CASE("horizontal pass never loses holders of an optimal coordinate", "[crisscross][property]") {
  // Sphere with every coordinate but d fixed at 0: fitness is x_d^2, so the
  // holder of x_d = 0 cannot be strictly beaten and the others only move closer.
  const auto obj = benchmark("sphere", 4);
  const std::size_t d = 2;
  const double eps = 1e-6;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng init(seed);
    std::vector<Position> positions(12, Position(4, 0.0));
    for (std::size_t i = 1; i < positions.size(); ++i) positions[i][d] = init.uniform(-100, 100);
    auto state = swarm_from(obj, positions);
    auto near = [&] {
      return std::count_if(state.individuals.begin(), state.individuals.end(),
                           [&](const Individual& ind) { return std::abs(ind.position[d]) <= eps; });
    };
    const auto count_before = near();
    Rng rng(seed * 7);
    apply_crisscross(state, obj, {1.0, 0.0}, rng);
    REQUIRE(near() >= count_before);
    REQUIRE(state.individuals[0].position[d] == 0.0);
  }
}

TEST_CASE("apply_crisscross is deterministic", "[crisscross]") {
  const auto obj = benchmark("quartic", 5);
  auto a = random_swarm(obj, 10, 9);
  auto b = a;
  Rng ra(10);
  Rng rb(10);
  apply_crisscross(a, obj, {}, ra);
  apply_crisscross(b, obj, {}, rb);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(a.individuals[i].position == b.individuals[i].position);
    CHECK(a.individuals[i].fitness == b.individuals[i].fitness);
  }
}
