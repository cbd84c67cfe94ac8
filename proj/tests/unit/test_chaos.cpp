#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include "cicrdbo/chaos.hpp"
#include "cicrdbo/errors.hpp"
#include "oracles.hpp"

using namespace cicrdbo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("circle_step forced values", "[chaos]") {
  CHECK(circle_step(0.0) == 0.2);
  CHECK_THAT(circle_step(0.5), WithinAbs(0.7, 1e-15));
}

TEST_CASE("circle_step at 0.25 matches the closed form", "[chaos]") {
  // sin(pi/2) = 1, so the step is 0.45 - 0.5 / (2 pi).
  const double closed_form = 0.45 - 0.5 / (2.0 * std::numbers::pi);
  CHECK_THAT(closed_form, WithinAbs(0.3704225, 5e-8));
  CHECK_THAT(circle_step(0.25), WithinRel(closed_form, 1e-12));
  CHECK_THAT(circle_step(0.25), WithinRel(static_cast<double>(oracle::circle_step(0.25L)), 1e-12));
}

TEST_CASE("circle_step rejects inputs outside [0, 1)", "[chaos]") {
  CHECK_THROWS_AS(circle_step(1.0), DomainError);
  CHECK_THROWS_AS(circle_step(-0.01), DomainError);
  CHECK_THROWS_AS(circle_step(std::nan("")), DomainError);
}

TEST_CASE("circle_step stays in [0, 1) and agrees with the long double oracle", "[chaos][property]") {
  Rng rng(11);
  for (int i = 0; i < 20000; ++i) {
    const double x = rng.uniform();
    const double y = circle_step(x);
    REQUIRE(y >= 0.0);
    REQUIRE(y < 1.0);
    const double ref = static_cast<double>(oracle::circle_step(x));
    // Values within rounding of the wrap point may land on either side.
    const double diff = std::abs(y - ref);
    REQUIRE(std::min(diff, 1.0 - diff) < 1e-12);
  }
}

TEST_CASE("chaotic_sequence chains circle_step", "[chaos]") {
  const auto seq = chaotic_sequence(0.0, 2);
  REQUIRE(seq.size() == 2);
  CHECK(seq[0] == 0.2);
  CHECK_THAT(seq[1], WithinRel(static_cast<double>(oracle::circle_step(oracle::circle_step(0.0L))), 1e-12));

  const auto one = chaotic_sequence(0.5, 1);
  REQUIRE(one.size() == 1);
  CHECK_THAT(one[0], WithinAbs(0.7, 1e-15));

  CHECK(chaotic_sequence(0.37, 500) == chaotic_sequence(0.37, 500));
  CHECK_THROWS_AS(chaotic_sequence(0.1, 0), EmptyRequestError);
}

TEST_CASE("chaotic sequence covers every decile", "[chaos][property]") {
  const auto seq = chaotic_sequence(0.7, 10000);
  std::array<int, 10> bins{};
  for (double x : seq) {
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    ++bins[static_cast<std::size_t>(x * 10.0)];
  }
  for (int count : bins) CHECK(count >= 100);
}

TEST_CASE("init_population maps chaotic values affinely", "[chaos]") {
  const SearchBox box = SearchBox::uniform(1, 0.0, 10.0);
  // x0 = 0 makes the first chaotic value exactly 0.2.
  const auto pop = init_population(box, 1, 0.0);
  REQUIRE(pop.size() == 1);
  CHECK_THAT(pop[0][0], WithinAbs(2.0, 1e-12));

  // u = 0 maps to the lower bound. Bisection brackets the preimage of the
  // wrap point; its upper end steps to just above 0.
  double lo = 0.7;
  double hi = 0.95;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double y = circle_step(mid);
    (y > 0.5 ? lo : hi) = mid;
  }
  const auto edge = init_population(SearchBox::uniform(1, -3.0, 5.0), 1, hi);
  CHECK_THAT(edge[0][0], WithinAbs(-3.0, 1e-9));
}

TEST_CASE("init_population is row-major over one stream", "[chaos]") {
  SearchBox box{{-1.0, 0.0, 10.0}, {1.0, 5.0, 20.0}};
  const auto pop = init_population(box, 4, 0.3);
  const auto seq = chaotic_sequence(0.3, 12);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t d = 0; d < 3; ++d) {
      const double expected = box.lower[d] + seq[i * 3 + d] * (box.upper[d] - box.lower[d]);
      CHECK(pop[i][d] == expected);
      CHECK(pop[i][d] >= box.lower[d]);
      CHECK(pop[i][d] <= box.upper[d]);
    }
  }
}

TEST_CASE("init_population propagates a degenerate box", "[chaos]") {
  SearchBox flat{{0.0, 1.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(init_population(flat, 3, 0.2), DomainError);
  SearchBox ragged{{0.0}, {1.0, 2.0}};
  CHECK_THROWS_AS(init_population(ragged, 3, 0.2), DomainError);
}

TEST_CASE("uniform_population stays inside the box", "[chaos]") {
  Rng rng(5);
  SearchBox box{{-5.0, 100.0}, {5.0, 101.0}};
  for (const auto& x : uniform_population(box, 200, rng)) CHECK(box.contains(x));
}
