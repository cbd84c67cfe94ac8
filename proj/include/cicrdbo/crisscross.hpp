#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "cicrdbo/dbo.hpp"
#include "cicrdbo/objectives.hpp"
#include "cicrdbo/rng.hpp"

namespace cicrdbo {

struct CrossoverParams {
  double horizontal_prob = 1.0;  // per pair
  double vertical_prob = 0.6;    // per individual

  // Throws ConfigError unless both lie in [0, 1] and vertical <= horizontal.
  void validate() const;
};

/// Horizontal (same-dimension, two-parent) blend on dimension d.
///
///   msi = r1*xi + (1-r1)*xj + c1*(xi - xj)
///   msj = r2*xj + (1-r2)*xi + c2*(xj - xi)
///
/// r1, r2 in [0, 1]; c1, c2 in [-1, 1]. The result is not clamped.
std::pair<double, double> horizontal_cross(std::span<const double> xi, std::span<const double> xj,
                                           std::size_t d, double r1, double r2, double c1,
                                           double c2);

// Vertical (within-individual) blend r*x[d1] + (1-r)*x[d2], destined for d1.
double vertical_cross(std::span<const double> xi, std::size_t d1, std::size_t d2, double r);

// Greedy retention: the strictly better (lower fitness) individual; ties keep the parent.
const Individual& compete(const Individual& parent, const Individual& offspring);

/// Crisscross pass over the whole population.
///
/// RNG consumption order:
///   1. Fisher-Yates permutation of the indices; consecutive entries form
///      pairs, and with an odd count the last entry sits out.
///   2. per pair: u; if u < horizontal_prob then per dimension r1, r2, c1, c2,
///      followed by the fitness noise for the i-offspring then the j-offspring.
///   3. per individual in index order: u; if u < vertical_prob and dim >= 2
///      then d1, d2 (distinct), r, fitness noise.
/// Offspring are clamped to the box and keep the parent's previous_position.
/// Roles are untouched because the permutation only chooses partners.
void apply_crisscross(SwarmState& state, const Objective& objective, const CrossoverParams& params,
                      Rng& rng);

}  // namespace cicrdbo
