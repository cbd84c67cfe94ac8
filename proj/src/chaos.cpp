#include "cicrdbo/chaos.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cicrdbo/errors.hpp"

namespace cicrdbo {

double circle_step(double x, const CircleParams& params) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("circle map input must lie in [0, 1), got " + std::to_string(x));
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double raw = x + params.b - params.a / two_pi * std::sin(two_pi * x);
  double y = raw - std::floor(raw);
  // floor() can round a tiny negative remainder up to exactly 1.0.
  if (y >= 1.0) y = 0.0;
  return y;
}

std::vector<double> chaotic_sequence(double x0, std::size_t n, const CircleParams& params) {
  if (n == 0) throw EmptyRequestError("chaotic_sequence requires n >= 1");
  std::vector<double> seq;
  seq.reserve(n);
  double x = x0;
  for (std::size_t i = 0; i < n; ++i) {
    x = circle_step(x, params);
    seq.push_back(x);
  }
  return seq;
}

std::vector<Position> init_population(const SearchBox& box, std::size_t pop_size, double x0,
                                      const CircleParams& params) {
  box.validate();
  if (pop_size == 0) throw EmptyRequestError("population size must be at least 1");
  const std::size_t dim = box.dim();
  const std::vector<double> seq = chaotic_sequence(x0, pop_size * dim, params);

  std::vector<Position> population(pop_size, Position(dim));
  for (std::size_t i = 0; i < pop_size; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double u = seq[i * dim + d];
      population[i][d] = box.clamp(d, box.lower[d] + u * (box.upper[d] - box.lower[d]));
    }
  }
  return population;
}

std::vector<Position> uniform_population(const SearchBox& box, std::size_t pop_size, Rng& rng) {
  box.validate();
  if (pop_size == 0) throw EmptyRequestError("population size must be at least 1");
  std::vector<Position> population(pop_size, Position(box.dim()));
  for (auto& x : population) {
    for (std::size_t d = 0; d < x.size(); ++d) {
      x[d] = box.clamp(d, rng.uniform(box.lower[d], box.upper[d]));
    }
  }
  return population;
}

}  // namespace cicrdbo
