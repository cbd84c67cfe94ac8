#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cicrdbo/rng.hpp"
#include "cicrdbo/search_box.hpp"

namespace cicrdbo {

/// A minimization problem over a search box.
///
/// The fitness function itself is deterministic. Objectives flagged noisy
/// (the quartic benchmark) add U[0, noise_amplitude) drawn from a caller-owned
/// stream, so a seeded run stays reproducible.
class Objective {
 public:
  using Function = std::function<double(std::span<const double>)>;

  Objective(std::string name, SearchBox box, Function fn, double known_optimum,
            Position minimizer = {}, double noise_amplitude = 0.0);

  const std::string& name() const { return name_; }
  const SearchBox& box() const { return box_; }
  std::size_t dim() const { return box_.dim(); }
  double known_optimum() const { return known_optimum_; }
  // Empty when no minimizer is known.
  const Position& minimizer() const { return minimizer_; }
  bool noisy() const { return noise_amplitude_ > 0.0; }

  // Deterministic part of the fitness. Throws DomainError on dimension
  // mismatch or a non-finite coordinate.
  double evaluate(std::span<const double> x) const;

  // Fitness as seen by an optimizer run; draws one uniform from `noise` only
  // when the objective is noisy.
  double evaluate(std::span<const double> x, Rng& noise) const;

 private:
  void check(std::span<const double> x) const;

  std::string name_;
  SearchBox box_;
  Function fn_;
  double known_optimum_;
  Position minimizer_;
  double noise_amplitude_;
};

double sphere(std::span<const double> x);
double schwefel_2_22(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double step(std::span<const double> x);
double quartic(std::span<const double> x);  // noise-free part
double schwefel_2_26(std::span<const double> x);  // shifted so the minimum is 0
double rastrigin(std::span<const double> x);
double ackley(std::span<const double> x);
double griewank(std::span<const double> x);
double levy(std::span<const double> x);

// Coordinate of the Schwefel 2.26 minimizer and the per-dimension shift.
inline constexpr double kSchwefel226Argmax = 420.96874635998202731;
inline constexpr double kSchwefel226Shift = 418.98288727243370627;

// The ten benchmark objectives in canonical order. Throws DomainError if dim < 2.
std::vector<Objective> benchmark_suite(std::size_t dim = 30);

std::vector<std::string> benchmark_names();

// Single suite member by name. Throws ConfigError for unknown names.
Objective benchmark(const std::string& name, std::size_t dim = 30);

}  // namespace cicrdbo
