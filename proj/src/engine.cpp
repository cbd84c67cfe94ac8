#include "cicrdbo/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "cicrdbo/chaos.hpp"
#include "cicrdbo/errors.hpp"
#include "cicrdbo/export.hpp"

namespace cicrdbo {

std::string to_string(Algorithm a) { return a == Algorithm::dbo ? "dbo" : "cicrdbo"; }

std::string to_string(InitScheme s) {
  return s == InitScheme::circle ? "circle" : "uniform";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "dbo") return Algorithm::dbo;
  if (name == "cicrdbo") return Algorithm::cicrdbo;
  throw ConfigError("unknown algorithm '" + name + "' (expected dbo or cicrdbo)");
}

OptimizerConfig OptimizerConfig::defaults(Algorithm algorithm) {
  OptimizerConfig c;
  c.algorithm = algorithm;
  c.init = algorithm == Algorithm::cicrdbo ? InitScheme::circle : InitScheme::uniform_random;
  return c;
}

void OptimizerConfig::validate() const {
  if (pop_size < 2) throw ConfigError("population size must be at least 2");
  if (max_iters < 1) throw ConfigError("iteration budget must be at least 1");
  dbo.validate(pop_size);
  if (algorithm == Algorithm::cicrdbo) {
    if (init != InitScheme::circle) throw ConfigError("cicrdbo requires circle-map initialisation");
    crossover.validate();
  }
  if (!std::isfinite(circle.a) || !std::isfinite(circle.b)) {
    throw ConfigError("circle map coefficients must be finite");
  }
}

std::string OptimizerConfig::fingerprint() const {
  const RoleCounts roles = dbo.roles_for(pop_size);
  std::string s = "algo=" + to_string(algorithm) + ";init=" + to_string(init) +
                  ";pop=" + std::to_string(pop_size) + ";iters=" + std::to_string(max_iters) +
                  ";k=" + format_double(dbo.k) + ";b=" + format_double(dbo.b_roll) +
                  ";S=" + format_double(dbo.steal_scale) +
                  ";pdev=" + format_double(dbo.deviation_prob) +
                  ";pobs=" + format_double(dbo.obstacle_prob) + ";roles=" +
                  std::to_string(roles.roll) + "/" + std::to_string(roles.brood) + "/" +
                  std::to_string(roles.forage) + "/" + std::to_string(roles.thief);
  if (algorithm == Algorithm::cicrdbo) {
    s += ";ph=" + format_double(crossover.horizontal_prob) +
         ";pv=" + format_double(crossover.vertical_prob);
  }
  if (init == InitScheme::circle) {
    s += ";ca=" + format_double(circle.a) + ";cb=" + format_double(circle.b);
  }
  return s + ";seed=" + std::to_string(seed);
}

bool RunRecord::same_result(const RunRecord& o) const {
  return fingerprint == o.fingerprint && algorithm == o.algorithm && objective == o.objective &&
         dim == o.dim && seed == o.seed && trace == o.trace &&
         final_best_position == o.final_best_position &&
         final_best_fitness == o.final_best_fitness;
}

SwarmState initialize_swarm(const OptimizerConfig& config, const Objective& objective, Rng& rng,
                            std::span<const Position> injected) {
  const SearchBox& box = objective.box();
  std::vector<Position> positions =
      config.init == InitScheme::circle
          ? init_population(box, config.pop_size, rng.uniform_open(), config.circle)
          : uniform_population(box, config.pop_size, rng);

  if (injected.size() > positions.size()) {
    throw ConfigError("more injected positions than population members");
  }
  for (std::size_t i = 0; i < injected.size(); ++i) {
    if (injected[i].size() != box.dim()) throw ConfigError("injected position has wrong dimension");
    positions[i] = injected[i];
    box.clamp(positions[i]);
  }

  std::vector<Individual> individuals;
  individuals.reserve(positions.size());
  for (auto& p : positions) {
    Individual ind;
    ind.fitness = objective.evaluate(p, rng);
    ind.previous_position = p;
    ind.position = std::move(p);
    individuals.push_back(std::move(ind));
  }
  return make_swarm(std::move(individuals), config.dbo.roles_for(config.pop_size),
                    config.max_iters);
}

void iterate(SwarmState& state, const OptimizerConfig& config, const Objective& objective, Rng& rng) {
  dbo_step(state, objective, config.dbo, rng);
  if (config.algorithm == Algorithm::cicrdbo) {
    apply_crisscross(state, objective, config.crossover, rng);
  }
}

RunRecord run_optimizer(const OptimizerConfig& config, const Objective& objective,
                        std::span<const Position> injected) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  Rng rng(config.seed);
  SwarmState state = initialize_swarm(config, objective, rng, injected);

  RunRecord record;
  record.fingerprint = config.fingerprint();
  record.algorithm = to_string(config.algorithm);
  record.objective = objective.name();
  record.dim = objective.dim();
  record.seed = config.seed;
  record.trace.reserve(config.max_iters + 1);
  record.trace.push_back(state.global_best.fitness);

  for (std::size_t t = 0; t < config.max_iters; ++t) {
    iterate(state, config, objective, rng);
    record.trace.push_back(state.global_best.fitness);
  }

  record.final_best_position = state.global_best.position;
  record.final_best_fitness = state.global_best.fitness;
  record.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

BatchStats compute_stats(std::span<const double> values) {
  if (values.empty()) throw EmptyRequestError("statistics of an empty batch");
  BatchStats s;
  s.n_runs = values.size();
  s.best = *std::min_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(values.size()));
  // best <= mean must survive rounding.
  s.mean = std::max(s.mean, s.best);
  return s;
}

BatchResult run_batch(const OptimizerConfig& config, const Objective& objective,
                      std::size_t n_runs, std::size_t threads) {
  if (n_runs == 0) throw ConfigError("a batch needs at least one run");
  config.validate();

  BatchResult result;
  result.runs.resize(n_runs);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n_runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < n_runs; r = next++) {
      try {
        OptimizerConfig c = config;
        c.seed = config.seed + r;
        result.runs[r] = run_optimizer(c, objective);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> finals;
  finals.reserve(n_runs);
  for (const auto& run : result.runs) finals.push_back(run.final_best_fitness);
  result.stats = compute_stats(finals);
  return result;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"pop_size", "max_iters", "k", "b_roll", "ph", "pv"};
  return names;
}

OptimizerConfig with_parameter(const OptimizerConfig& base, const std::string& param, double value) {
  auto as_count = [&](double v) {
    if (!(v >= 1.0) || v != std::floor(v)) {
      throw ConfigError(param + " requires a positive integer value");
    }
    return static_cast<std::size_t>(v);
  };
  OptimizerConfig c = base;
  if (param == "pop_size") {
    c.pop_size = as_count(value);
    c.dbo.roles.reset();
  } else if (param == "max_iters") {
    c.max_iters = as_count(value);
  } else if (param == "k") {
    c.dbo.k = value;
  } else if (param == "b_roll") {
    c.dbo.b_roll = value;
  } else if (param == "ph") {
    c.crossover.horizontal_prob = value;
  } else if (param == "pv") {
    c.crossover.vertical_prob = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + param + "'");
  }
  c.validate();
  return c;
}

std::vector<SweepRow> sweep(const OptimizerConfig& base, const Objective& objective,
                            const std::string& param, std::span<const double> values,
                            std::size_t n_runs, std::size_t threads) {
  std::vector<OptimizerConfig> configs;
  configs.reserve(values.size());
  for (double v : values) configs.push_back(with_parameter(base, param, v));

  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows.push_back({values[i], run_batch(configs[i], objective, n_runs, threads).stats});
  }
  return rows;
}

}  // namespace cicrdbo
