#pragma once

#include <cstddef>
#include <vector>

#include "cicrdbo/rng.hpp"
#include "cicrdbo/search_box.hpp"

namespace cicrdbo {

/// Coefficients of the circle map x -> mod(x + b - a/(2*pi) * sin(2*pi*x), 1).
struct CircleParams {
  double a = 0.5;
  double b = 0.2;
};

// One circle-map iteration. Throws DomainError unless 0 <= x < 1.
double circle_step(double x, const CircleParams& params = {});

// [x1, ..., xn] obtained by iterating circle_step from x0 (x0 itself excluded).
// Throws EmptyRequestError when n == 0.
std::vector<double> chaotic_sequence(double x0, std::size_t n, const CircleParams& params = {});

/// Population spread over `box` by a single chaotic stream seeded at x0.
///
/// The stream is consumed individual-major, dimension-minor: coordinate d of
/// individual i takes value u = seq[i * dim + d] and maps to
/// lower[d] + u * (upper[d] - lower[d]).
std::vector<Position> init_population(const SearchBox& box, std::size_t pop_size, double x0,
                                      const CircleParams& params = {});

// Plain uniform-random population, consumed in the same row-major order.
std::vector<Position> uniform_population(const SearchBox& box, std::size_t pop_size, Rng& rng);

}  // namespace cicrdbo
