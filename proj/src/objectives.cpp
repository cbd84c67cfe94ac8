#include "cicrdbo/objectives.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "cicrdbo/errors.hpp"

namespace cicrdbo {

Objective::Objective(std::string name, SearchBox box, Function fn, double known_optimum,
                     Position minimizer, double noise_amplitude)
    : name_(std::move(name)),
      box_(std::move(box)),
      fn_(std::move(fn)),
      known_optimum_(known_optimum),
      minimizer_(std::move(minimizer)),
      noise_amplitude_(noise_amplitude) {
  box_.validate();
  if (!minimizer_.empty() && minimizer_.size() != box_.dim()) {
    throw DomainError("minimizer of '" + name_ + "' has wrong dimension");
  }
}

void Objective::check(std::span<const double> x) const {
  if (x.size() != box_.dim()) {
    throw DomainError("objective '" + name_ + "' expects dimension " +
                      std::to_string(box_.dim()) + ", got " + std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("non-finite coordinate passed to '" + name_ + "'");
  }
}

double Objective::evaluate(std::span<const double> x) const {
  check(x);
  return fn_(x);
}

double Objective::evaluate(std::span<const double> x, Rng& noise) const {
  double f = evaluate(x);
  if (noisy()) f += noise_amplitude_ * noise.uniform();
  return f;
}

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double schwefel_2_22(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (double v : x) {
    sum += std::abs(v);
    prod *= std::abs(v);
  }
  return sum + prod;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = x[i] - 1.0;
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double step(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    const double r = std::floor(v + 0.5);
    s += r * r;
  }
  return s;
}

double quartic(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v2 = x[i] * x[i];
    s += static_cast<double>(i + 1) * v2 * v2;
  }
  return s;
}

double schwefel_2_26(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * std::sin(std::sqrt(std::abs(v)));
  return kSchwefel226Shift * static_cast<double>(x.size()) - s;
}

double rastrigin(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
  return s;
}

double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * kPi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double griewank(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i];
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + sum / 4000.0 - prod;
}

double levy(std::span<const double> x) {
  auto w = [](double v) { return 1.0 + (v - 1.0) / 4.0; };
  const std::size_t n = x.size();
  const double s0 = std::sin(kPi * w(x[0]));
  double s = s0 * s0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double wi = w(x[i]);
    const double si = std::sin(kPi * wi + 1.0);
    s += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * si * si);
  }
  const double wn = w(x[n - 1]);
  const double sn = std::sin(2.0 * kPi * wn);
  s += (wn - 1.0) * (wn - 1.0) * (1.0 + sn * sn);
  return s;
}

namespace {

struct SuiteEntry {
  const char* name;
  double (*fn)(std::span<const double>);
  double lo;
  double hi;
  double argmin;  // minimizer coordinate, identical in every dimension
  double noise;
};

constexpr SuiteEntry kSuite[] = {
    {"sphere", sphere, -100.0, 100.0, 0.0, 0.0},
    {"schwefel222", schwefel_2_22, -10.0, 10.0, 0.0, 0.0},
    {"rosenbrock", rosenbrock, -30.0, 30.0, 1.0, 0.0},
    {"step", step, -100.0, 100.0, 0.0, 0.0},
    {"quartic", quartic, -1.28, 1.28, 0.0, 1.0},
    {"schwefel226", schwefel_2_26, -500.0, 500.0, kSchwefel226Argmax, 0.0},
    {"rastrigin", rastrigin, -5.12, 5.12, 0.0, 0.0},
    {"ackley", ackley, -32.0, 32.0, 0.0, 0.0},
    {"griewank", griewank, -600.0, 600.0, 0.0, 0.0},
    {"levy", levy, -10.0, 10.0, 1.0, 0.0},
};

Objective make(const SuiteEntry& e, std::size_t dim) {
  return Objective(e.name, SearchBox::uniform(dim, e.lo, e.hi), e.fn, 0.0,
                   Position(dim, e.argmin), e.noise);
}

}  // namespace

std::vector<Objective> benchmark_suite(std::size_t dim) {
  if (dim < 2) throw DomainError("benchmark suite requires dim >= 2");
  std::vector<Objective> suite;
  suite.reserve(std::size(kSuite));
  for (const auto& e : kSuite) suite.push_back(make(e, dim));
  return suite;
}

std::vector<std::string> benchmark_names() {
  std::vector<std::string> names;
  for (const auto& e : kSuite) names.emplace_back(e.name);
  return names;
}

Objective benchmark(const std::string& name, std::size_t dim) {
  if (dim < 2) throw DomainError("benchmark suite requires dim >= 2");
  for (const auto& e : kSuite) {
    if (name == e.name) return make(e, dim);
  }
  throw ConfigError("unknown benchmark function '" + name + "'");
}

}  // namespace cicrdbo
