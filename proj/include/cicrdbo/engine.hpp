#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cicrdbo/chaos.hpp"
#include "cicrdbo/crisscross.hpp"
#include "cicrdbo/dbo.hpp"
#include "cicrdbo/objectives.hpp"

namespace cicrdbo {

enum class Algorithm { dbo, cicrdbo };
enum class InitScheme { uniform_random, circle };

std::string to_string(Algorithm a);
std::string to_string(InitScheme s);
// Throws ConfigError for anything other than "dbo" / "cicrdbo".
Algorithm parse_algorithm(const std::string& name);

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::cicrdbo;
  std::size_t pop_size = 30;
  std::size_t max_iters = 500;
  DboParams dbo;
  CrossoverParams crossover;
  InitScheme init = InitScheme::circle;
  CircleParams circle;
  std::uint64_t seed = 0;

  // Baseline uses uniform-random initialisation, CICRDBO the circle map.
  static OptimizerConfig defaults(Algorithm algorithm);

  // Throws ConfigError on any violated constraint.
  void validate() const;

  // Stable textual identity of every setting that influences a run.
  std::string fingerprint() const;
};

struct RunRecord {
  std::string fingerprint;
  std::string algorithm;
  std::string objective;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  // trace[t] is the best-so-far fitness after iteration t; trace[0] is the initial population.
  std::vector<double> trace;
  Position final_best_position;
  double final_best_fitness = 0.0;
  double wall_time_seconds = 0.0;

  // Equality over everything except wall time.
  bool same_result(const RunRecord& other) const;
};

struct BatchStats {
  std::size_t n_runs = 0;
  double best = 0.0;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

struct BatchResult {
  BatchStats stats;
  std::vector<RunRecord> runs;  // ordered by seed
};

struct SweepRow {
  double value = 0.0;
  BatchStats stats;
};

// Evaluated initial swarm. `injected` positions overwrite the first
// individuals after the configured initialisation (clamped to the box).
SwarmState initialize_swarm(const OptimizerConfig& config, const Objective& objective, Rng& rng,
                            std::span<const Position> injected = {});

// One full iteration: dbo_step, then apply_crisscross for CICRDBO.
void iterate(SwarmState& state, const OptimizerConfig& config, const Objective& objective, Rng& rng);

RunRecord run_optimizer(const OptimizerConfig& config, const Objective& objective,
                        std::span<const Position> injected = {});

BatchStats compute_stats(std::span<const double> values);

// Seeds config.seed, config.seed + 1, ...; runs may execute on several threads.
BatchResult run_batch(const OptimizerConfig& config, const Objective& objective,
                      std::size_t n_runs, std::size_t threads = 0);

// Parameters accepted by sweep().
const std::vector<std::string>& sweep_parameters();

// Copy of `base` with one named parameter replaced. Throws ConfigError for
// unknown names or values invalid for that parameter.
OptimizerConfig with_parameter(const OptimizerConfig& base, const std::string& param, double value);

std::vector<SweepRow> sweep(const OptimizerConfig& base, const Objective& objective,
                            const std::string& param, std::span<const double> values,
                            std::size_t n_runs, std::size_t threads = 0);

}  // namespace cicrdbo
