#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "cicrdbo/engine.hpp"
#include "cicrdbo/errors.hpp"
#include "cicrdbo/objectives.hpp"

using namespace cicrdbo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

OptimizerConfig small(Algorithm algo, std::size_t iters = 40, std::uint64_t seed = 1) {
  auto c = OptimizerConfig::defaults(algo);
  c.pop_size = 12;
  c.max_iters = iters;
  c.seed = seed;
  return c;
}

bool non_increasing(const std::vector<double>& trace) {
  for (std::size_t t = 1; t < trace.size(); ++t) {
    if (trace[t] > trace[t - 1]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("config defaults and validation", "[engine]") {
  const auto dbo = OptimizerConfig::defaults(Algorithm::dbo);
  const auto ci = OptimizerConfig::defaults(Algorithm::cicrdbo);
  CHECK(dbo.pop_size == 30);
  CHECK(dbo.max_iters == 500);
  CHECK(dbo.init == InitScheme::uniform_random);
  CHECK(ci.init == InitScheme::circle);
  CHECK_NOTHROW(dbo.validate());
  CHECK_NOTHROW(ci.validate());

  auto bad = ci;
  bad.init = InitScheme::uniform_random;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ci;
  bad.pop_size = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ci;
  bad.max_iters = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ci;
  bad.crossover.vertical_prob = 1.0;
  bad.crossover.horizontal_prob = 0.5;
  CHECK_THROWS_AS(run_optimizer(bad, benchmark("sphere", 2)), ConfigError);

  CHECK(parse_algorithm("dbo") == Algorithm::dbo);
  CHECK(parse_algorithm("cicrdbo") == Algorithm::cicrdbo);
  CHECK_THROWS_AS(parse_algorithm("pso"), ConfigError);
  CHECK(dbo.fingerprint() != ci.fingerprint());
}

TEST_CASE("same config and seed give the same record", "[engine]") {
  const auto obj = benchmark("quartic", 5);
  for (auto algo : {Algorithm::dbo, Algorithm::cicrdbo}) {
    const auto cfg = small(algo, 30, 5);
    const auto a = run_optimizer(cfg, obj);
    const auto b = run_optimizer(cfg, obj);
    CHECK(a.same_result(b));
    auto other = cfg;
    other.seed = 6;
    CHECK_FALSE(a.same_result(run_optimizer(other, obj)));
  }
}

TEST_CASE("a one-iteration run has a two-entry trace", "[engine]") {
  const auto obj = benchmark("sphere", 4);
  for (auto algo : {Algorithm::dbo, Algorithm::cicrdbo}) {
    const auto rec = run_optimizer(small(algo, 1), obj);
    REQUIRE(rec.trace.size() == 2);
    CHECK(rec.trace[1] <= rec.trace[0]);
    CHECK(rec.final_best_fitness == rec.trace.back());
    CHECK(obj.evaluate(rec.final_best_position) == rec.final_best_fitness);
  }
}

TEST_CASE("cicrdbo on a small sphere improves on its start", "[engine]") {
  auto cfg = OptimizerConfig::defaults(Algorithm::cicrdbo);
  cfg.pop_size = 10;
  cfg.max_iters = 50;
  cfg.seed = 7;
  const auto rec = run_optimizer(cfg, benchmark("sphere", 2));
  REQUIRE(rec.trace.size() == 51);
  CHECK(rec.final_best_fitness <= rec.trace.front());
  CHECK(non_increasing(rec.trace));
}

TEST_CASE("traces are non-increasing and end inside the box", "[engine][property]") {
  for (const auto& obj : benchmark_suite(6)) {
    for (auto algo : {Algorithm::dbo, Algorithm::cicrdbo}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto rec = run_optimizer(small(algo, 40, seed), obj);
        INFO(obj.name() << " " << to_string(algo) << " seed " << seed);
        REQUIRE(rec.trace.size() == 41);
        REQUIRE(non_increasing(rec.trace));
        REQUIRE(obj.box().contains(rec.final_best_position));
      }
    }
  }
}

TEST_CASE("injected positions seed the first individuals", "[engine]") {
  const auto obj = benchmark("sphere", 3);
  auto cfg = small(Algorithm::cicrdbo, 1);
  Rng rng(cfg.seed);
  const std::vector<Position> injected{{0.0, 0.0, 0.0}, {500.0, -500.0, 1.0}};
  const auto state = initialize_swarm(cfg, obj, rng, injected);
  CHECK(state.individuals[0].position == injected[0]);
  CHECK(state.individuals[1].position == Position{100.0, -100.0, 1.0});
  CHECK(state.global_best.fitness == 0.0);

  const auto rec = run_optimizer(cfg, obj, injected);
  CHECK(rec.trace[0] == 0.0);
  CHECK(rec.final_best_fitness == 0.0);
}

TEST_CASE("batch statistics", "[engine]") {
  const std::vector<double> two{1.0, 3.0};
  const auto s = compute_stats(two);
  CHECK(s.n_runs == 2);
  CHECK(s.best == 1.0);
  CHECK(s.mean == 2.0);
  CHECK(s.std == 1.0);

  const std::vector<double> one{4.5};
  const auto s1 = compute_stats(one);
  CHECK(s1.best == s1.mean);
  CHECK(s1.std == 0.0);

  CHECK_THROWS_AS(compute_stats(std::vector<double>{}), EmptyRequestError);

  Rng rng(3);
  std::vector<double> values(57);
  for (double& v : values) v = std::exp(rng.uniform(-20.0, 5.0));
  long double sum = 0.0L;
  for (double v : values) sum += v;
  const long double mean = sum / values.size();
  long double sq = 0.0L;
  for (double v : values) sq += (v - mean) * (v - mean);
  const auto stats = compute_stats(values);
  CHECK(stats.best == *std::min_element(values.begin(), values.end()));
  CHECK_THAT(stats.mean, WithinRel(static_cast<double>(mean), 1e-12));
  CHECK_THAT(stats.std, WithinRel(static_cast<double>(std::sqrt(sq / values.size())), 1e-12));
}

TEST_CASE("run_batch uses consecutive seeds in order regardless of threads", "[engine]") {
  const auto obj = benchmark("griewank", 5);
  const auto cfg = small(Algorithm::cicrdbo, 20, 100);
  const auto serial = run_batch(cfg, obj, 4, 1);
  const auto parallel = run_batch(cfg, obj, 4, 3);
  REQUIRE(serial.runs.size() == 4);
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(serial.runs[r].seed == 100 + r);
    CHECK(serial.runs[r].same_result(parallel.runs[r]));
    auto single = cfg;
    single.seed = 100 + r;
    CHECK(serial.runs[r].same_result(run_optimizer(single, obj)));
  }
  CHECK(serial.stats.best == parallel.stats.best);
  CHECK(serial.stats.mean == parallel.stats.mean);
  CHECK(serial.stats.std == parallel.stats.std);
  CHECK(serial.stats.best <= serial.stats.mean);
  CHECK(serial.stats.std >= 0.0);

  const auto one = run_batch(cfg, obj, 1, 1);
  CHECK(one.stats.best == one.stats.mean);
  CHECK(one.stats.std == 0.0);
  CHECK_THROWS_AS(run_batch(cfg, obj, 0, 1), ConfigError);
}

TEST_CASE("sweep", "[engine]") {
  const auto obj = benchmark("sphere", 3);
  const auto base = small(Algorithm::cicrdbo, 10);
  const std::vector<double> pops{10, 30};
  const auto rows = sweep(base, obj, "pop_size", pops, 2, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].value == 10);
  CHECK(rows[1].value == 30);
  CHECK(rows[0].stats.n_runs == 2);

  CHECK_THROWS_AS(sweep(base, obj, "banana", pops, 1, 1), ConfigError);
  CHECK_THROWS_AS(with_parameter(base, "pop_size", 2.5), ConfigError);
  CHECK_THROWS_AS(with_parameter(base, "pv", 1.5), ConfigError);
  CHECK(with_parameter(base, "k", 0.15).dbo.k == 0.15);
  CHECK(with_parameter(base, "b_roll", 0.4).dbo.b_roll == 0.4);
  CHECK(with_parameter(base, "ph", 0.9).crossover.horizontal_prob == 0.9);
  CHECK(with_parameter(base, "max_iters", 7).max_iters == 7);
  CHECK(sweep_parameters().size() == 6);
}

TEST_CASE("max_iters sweep traces are each non-increasing", "[engine]") {
  // R depends on T_max, so traces under different budgets need not share a prefix.
  const auto obj = benchmark("ackley", 5);
  const auto base = small(Algorithm::cicrdbo, 10, 11);
  for (double iters : {20.0, 60.0}) {
    const auto cfg = with_parameter(base, "max_iters", iters);
    const auto rec = run_optimizer(cfg, obj);
    CHECK(rec.trace.size() == static_cast<std::size_t>(iters) + 1);
    CHECK(non_increasing(rec.trace));
  }
}
