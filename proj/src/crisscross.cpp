#include "cicrdbo/crisscross.hpp"

#include "cicrdbo/errors.hpp"

namespace cicrdbo {

void CrossoverParams::validate() const {
  if (!(horizontal_prob >= 0.0 && horizontal_prob <= 1.0)) {
    throw ConfigError("horizontal crossover probability must lie in [0, 1]");
  }
  if (!(vertical_prob >= 0.0 && vertical_prob <= 1.0)) {
    throw ConfigError("vertical crossover probability must lie in [0, 1]");
  }
  if (vertical_prob > horizontal_prob) {
    throw ConfigError("vertical crossover probability must not exceed the horizontal one");
  }
}

std::pair<double, double> horizontal_cross(std::span<const double> xi, std::span<const double> xj,
                                           std::size_t d, double r1, double r2, double c1,
                                           double c2) {
  const double a = xi[d];
  const double b = xj[d];
  return {r1 * a + (1.0 - r1) * b + c1 * (a - b), r2 * b + (1.0 - r2) * a + c2 * (b - a)};
}

double vertical_cross(std::span<const double> xi, std::size_t d1, std::size_t d2, double r) {
  return r * xi[d1] + (1.0 - r) * xi[d2];
}

const Individual& compete(const Individual& parent, const Individual& offspring) {
  return offspring.fitness < parent.fitness ? offspring : parent;
}

void apply_crisscross(SwarmState& state, const Objective& objective, const CrossoverParams& params,
                      Rng& rng) {
  const SearchBox& box = objective.box();
  const std::size_t dim = box.dim();
  auto& pop = state.individuals;

  auto offspring_of = [](const Individual& parent) {
    Individual child;
    child.previous_position = parent.previous_position;
    child.position.resize(parent.position.size());
    return child;
  };
  auto settle = [&](std::size_t i, Individual& child) {
    box.clamp(child.position);
    child.fitness = objective.evaluate(child.position, rng);
    if (&compete(pop[i], child) == &child) pop[i] = std::move(child);
  };

  const std::vector<std::size_t> order = rng.permutation(pop.size());
  for (std::size_t p = 0; p + 1 < order.size(); p += 2) {
    const std::size_t i = order[p];
    const std::size_t j = order[p + 1];
    if (!(rng.uniform() < params.horizontal_prob)) continue;
    Individual child_i = offspring_of(pop[i]);
    Individual child_j = offspring_of(pop[j]);
    for (std::size_t d = 0; d < dim; ++d) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      const double c1 = rng.uniform(-1.0, 1.0);
      const double c2 = rng.uniform(-1.0, 1.0);
      std::tie(child_i.position[d], child_j.position[d]) =
          horizontal_cross(pop[i].position, pop[j].position, d, r1, r2, c1, c2);
    }
    settle(i, child_i);
    settle(j, child_j);
  }

  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (!(rng.uniform() < params.vertical_prob) || dim < 2) continue;
    const std::size_t d1 = rng.index(dim);
    std::size_t d2 = rng.index(dim - 1);
    if (d2 >= d1) ++d2;
    const double r = rng.uniform();
    Individual child = pop[i];
    child.position[d1] = box.clamp(d1, vertical_cross(pop[i].position, d1, d2, r));
    settle(i, child);
  }

  state.refresh_extremes();
}

}  // namespace cicrdbo
