#include "cicrdbo/dbo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cicrdbo/errors.hpp"

namespace cicrdbo {

RoleCounts RoleCounts::proportional(std::size_t pop_size) {
  const double n = static_cast<double>(pop_size);
  const auto cut = [n](double frac) { return static_cast<std::size_t>(std::lround(n * frac)); };
  const std::size_t c1 = cut(6.0 / 30.0);
  const std::size_t c2 = cut(12.0 / 30.0);
  const std::size_t c3 = cut(19.0 / 30.0);
  return {c1, c2 - c1, c3 - c2, pop_size - c3};
}

RoleCounts DboParams::roles_for(std::size_t pop_size) const {
  return roles ? *roles : RoleCounts::proportional(pop_size);
}

void DboParams::validate(std::size_t pop_size) const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid DBO parameter: " + what); };
  if (!(k > 0.0 && k <= 0.2)) fail("k must lie in (0, 0.2]");
  if (!(b_roll > 0.0 && b_roll < 1.0)) fail("b_roll must lie in (0, 1)");
  if (!(steal_scale >= 0.0) || !std::isfinite(steal_scale)) fail("steal scale must be finite and >= 0");
  if (!(deviation_prob >= 0.0 && deviation_prob <= 1.0)) fail("deviation_prob must lie in [0, 1]");
  if (!(obstacle_prob >= 0.0 && obstacle_prob <= 1.0)) fail("obstacle_prob must lie in [0, 1]");
  if (roles_for(pop_size).total() != pop_size) {
    fail("role counts sum to " + std::to_string(roles_for(pop_size).total()) +
         ", population is " + std::to_string(pop_size));
  }
}

std::vector<Role> assign_roles(const RoleCounts& counts) {
  std::vector<Role> roles;
  roles.reserve(counts.total());
  roles.insert(roles.end(), counts.roll, Role::roller);
  roles.insert(roles.end(), counts.brood, Role::brooder);
  roles.insert(roles.end(), counts.forage, Role::forager);
  roles.insert(roles.end(), counts.thief, Role::thief);
  return roles;
}

void SwarmState::refresh_extremes() {
  if (individuals.empty()) return;
  auto [lo, hi] = std::minmax_element(
      individuals.begin(), individuals.end(),
      [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
  iteration_best = *lo;
  iteration_worst = *hi;
  if (global_best.position.empty() || lo->fitness < global_best.fitness) global_best = *lo;
}

SwarmState make_swarm(std::vector<Individual> individuals, const RoleCounts& counts,
                      std::size_t max_iterations) {
  if (counts.total() != individuals.size()) {
    throw ConfigError("role counts do not match population size");
  }
  SwarmState state;
  state.individuals = std::move(individuals);
  state.roles = assign_roles(counts);
  state.max_iterations = max_iterations;
  state.refresh_extremes();
  return state;
}

double shrink_factor(std::size_t t, std::size_t max_iterations) {
  const double r = 1.0 - static_cast<double>(t) / static_cast<double>(max_iterations);
  return std::clamp(r, 0.0, 1.0);
}

namespace {

struct Region {
  double lo;
  double hi;
};

// [max(c(1-R), Lb), min(c(1+R), Ub)]; collapses onto the clamped centre when
// the interval would be inverted.
Region shrunk_region(double centre, double shrink, double lb, double ub) {
  Region r{std::max(centre * (1.0 - shrink), lb), std::min(centre * (1.0 + shrink), ub)};
  if (r.lo > r.hi) r.lo = r.hi = std::clamp(centre, lb, ub);
  return r;
}

}  // namespace

Position roll_update(const Individual& ind, std::span<const double> worst, int alpha,
                     const DboParams& params, const SearchBox& box) {
  Position out(ind.position.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    const double x = ind.position[d];
    out[d] = x + alpha * params.k * ind.previous_position[d] + params.b_roll * std::abs(x - worst[d]);
  }
  box.clamp(out);
  return out;
}

Position dance_update(const Individual& ind, double theta, const SearchBox& box) {
  constexpr double pi = std::numbers::pi;
  if (theta == 0.0 || theta == pi / 2.0 || theta == pi) return ind.position;
  const double slope = std::tan(theta);
  Position out(ind.position.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    out[d] = ind.position[d] + slope * std::abs(ind.position[d] - ind.previous_position[d]);
  }
  box.clamp(out);
  return out;
}

Position brood_update(const Individual& ind, std::span<const double> best, double shrink,
                      std::span<const double> b1, std::span<const double> b2,
                      const SearchBox& box) {
  Position out(ind.position.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    const Region r = shrunk_region(best[d], shrink, box.lower[d], box.upper[d]);
    const double ball = ind.position[d];
    out[d] = best[d] + b1[d] * (ball - r.lo) + b2[d] * (ball - r.hi);
  }
  box.clamp(out);
  return out;
}

Position forage_update(const Individual& ind, std::span<const double> iter_best, double shrink,
                       std::span<const double> c1, std::span<const double> c2,
                       const SearchBox& box) {
  Position out(ind.position.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    const Region r = shrunk_region(iter_best[d], shrink, box.lower[d], box.upper[d]);
    const double x = ind.position[d];
    out[d] = x + c1[d] * (x - r.lo) + c2[d] * (x - r.hi);
  }
  box.clamp(out);
  return out;
}

Position steal_update(const Individual& ind, std::span<const double> best,
                      std::span<const double> iter_best, std::span<const double> g,
                      const DboParams& params, const SearchBox& box) {
  Position out(ind.position.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    const double x = ind.position[d];
    out[d] = iter_best[d] +
             params.steal_scale * g[d] * (std::abs(x - best[d]) + std::abs(x - iter_best[d]));
  }
  box.clamp(out);
  return out;
}

void dbo_step(SwarmState& state, const Objective& objective, const DboParams& params, Rng& rng) {
  const SearchBox& box = objective.box();
  const std::size_t n = state.individuals.size();
  const std::size_t dim = box.dim();

  std::vector<Position> before;
  before.reserve(n);
  for (const auto& ind : state.individuals) before.push_back(ind.position);

  auto commit = [&](std::size_t i, Position next) {
    Individual& ind = state.individuals[i];
    ind.fitness = objective.evaluate(next, rng);
    ind.position = std::move(next);
  };

  const Position worst = state.iteration_worst.position;
  for (std::size_t i = 0; i < n; ++i) {
    if (state.roles[i] != Role::roller) continue;
    const Individual& ind = state.individuals[i];
    if (rng.uniform() < params.obstacle_prob) {
      commit(i, dance_update(ind, std::numbers::pi * rng.uniform(), box));
    } else {
      const int alpha = rng.uniform() < params.deviation_prob ? -1 : 1;
      commit(i, roll_update(ind, worst, alpha, params, box));
    }
  }

  // Rollers have moved; the remaining roles steer by the refreshed iteration best.
  state.refresh_extremes();
  const Position best = state.global_best.position;
  const Position iter_best = state.iteration_best.position;
  const double shrink = shrink_factor(state.iteration + 1, state.max_iterations);

  std::vector<double> v1(dim);
  std::vector<double> v2(dim);
  for (std::size_t i = 0; i < n; ++i) {
    const Individual& ind = state.individuals[i];
    switch (state.roles[i]) {
      case Role::roller:
        break;
      case Role::brooder:
        rng.fill_uniform(v1);
        rng.fill_uniform(v2);
        commit(i, brood_update(ind, best, shrink, v1, v2, box));
        break;
      case Role::forager:
        rng.fill_normal(v1);
        rng.fill_uniform(v2);
        commit(i, forage_update(ind, iter_best, shrink, v1, v2, box));
        break;
      case Role::thief:
        rng.fill_normal(v1);
        commit(i, steal_update(ind, best, iter_best, v1, params, box));
        break;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    state.individuals[i].previous_position = std::move(before[i]);
  }
  ++state.iteration;
  state.refresh_extremes();
}

}  // namespace cicrdbo
