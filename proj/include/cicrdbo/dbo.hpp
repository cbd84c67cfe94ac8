#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cicrdbo/objectives.hpp"
#include "cicrdbo/rng.hpp"
#include "cicrdbo/search_box.hpp"

namespace cicrdbo {

struct Individual {
  Position position;
  Position previous_position;  // position at t-1
  double fitness = 0.0;
};

enum class Role { roller, brooder, forager, thief };

/// Number of individuals in each behavioural role.
///
/// Roles are assigned by index ranges in the order roller, brooder, forager,
/// thief and never change during a run.
struct RoleCounts {
  std::size_t roll = 0;
  std::size_t brood = 0;
  std::size_t forage = 0;
  std::size_t thief = 0;

  std::size_t total() const { return roll + brood + forage + thief; }

  // Cumulative rounding of the 6/30, 12/30, 19/30 boundaries; (6, 6, 7, 11) at 30.
  static RoleCounts proportional(std::size_t pop_size);

  bool operator==(const RoleCounts&) const = default;
};

struct DboParams {
  double k = 0.1;                // deflection coefficient
  double b_roll = 0.3;           // light-intensity coefficient
  double steal_scale = 0.5;      // S
  double deviation_prob = 0.1;   // P(alpha = -1)
  double obstacle_prob = 0.1;    // P(roller dances)
  std::optional<RoleCounts> roles;  // proportional split when unset

  RoleCounts roles_for(std::size_t pop_size) const;
  // Throws ConfigError on out-of-range constants or role counts that do not
  // sum to pop_size.
  void validate(std::size_t pop_size) const;
};

/// Population plus the tracked extremes.
///
/// global_best (X*) is the best individual ever evaluated in the run,
/// iteration_best (X^b) and iteration_worst (X^w) are the best and worst
/// members of the current population.
struct SwarmState {
  std::vector<Individual> individuals;
  std::vector<Role> roles;
  std::size_t iteration = 0;
  std::size_t max_iterations = 1;
  Individual global_best;
  Individual iteration_best;
  Individual iteration_worst;

  // Recomputes X^b and X^w from the population and folds X^b into X*.
  void refresh_extremes();
};

// Role vector for the given counts, in index order.
std::vector<Role> assign_roles(const RoleCounts& counts);

// Builds a state from evaluated individuals and refreshes the extremes.
SwarmState make_swarm(std::vector<Individual> individuals, const RoleCounts& counts,
                      std::size_t max_iterations);

// Shrink factor R = 1 - t / T_max for the iteration being computed.
double shrink_factor(std::size_t t, std::size_t max_iterations);

// Rolling: x + alpha*k*x_prev + b_roll*|x - worst|, clamped.
Position roll_update(const Individual& ind, std::span<const double> worst, int alpha,
                     const DboParams& params, const SearchBox& box);

// Dancing: x + tan(theta)*|x - x_prev|, clamped; identity at theta in {0, pi/2, pi}.
Position dance_update(const Individual& ind, double theta, const SearchBox& box);

// Brood ball placed around X* inside the shrinking spawning region.
Position brood_update(const Individual& ind, std::span<const double> best, double shrink,
                      std::span<const double> b1, std::span<const double> b2,
                      const SearchBox& box);

// Small beetle foraging inside the shrinking region around X^b.
Position forage_update(const Individual& ind, std::span<const double> iter_best, double shrink,
                       std::span<const double> c1, std::span<const double> c2,
                       const SearchBox& box);

// Thief: X^b + S*g*(|x - X*| + |x - X^b|), clamped.
Position steal_update(const Individual& ind, std::span<const double> best,
                      std::span<const double> iter_best, std::span<const double> g,
                      const DboParams& params, const SearchBox& box);

/// One baseline iteration.
///
/// RNG consumption order, which fixes the result for a given stream state:
///   1. each roller in index order: u; if u < obstacle_prob then theta = pi*u'
///      (dance), else u'' decides alpha (roll); then its fitness noise draw.
///   2. X^b is refreshed from the population (rollers already moved).
///   3. each brooder: b1[0..dim), b2[0..dim), fitness noise.
///   4. each forager: c1[0..dim) normal, c2[0..dim) uniform, fitness noise.
///   5. each thief: g[0..dim) normal, fitness noise.
/// Brooders, foragers and thieves read pre-step positions. Afterwards
/// previous_position holds the pre-step position, t is incremented and
/// X*, X^b, X^w are refreshed.
void dbo_step(SwarmState& state, const Objective& objective, const DboParams& params, Rng& rng);

}  // namespace cicrdbo
