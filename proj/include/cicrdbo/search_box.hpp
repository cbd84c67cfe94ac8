#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cicrdbo {

using Position = std::vector<double>;

/// Axis-aligned box [lower, upper] in which every position lives.
struct SearchBox {
  std::vector<double> lower;
  std::vector<double> upper;

  // Same [lo, hi] in every dimension.
  static SearchBox uniform(std::size_t dim, double lo, double hi);

  std::size_t dim() const { return lower.size(); }

  // Throws DomainError unless lengths agree, dim > 0, bounds are finite and
  // lower[d] < upper[d] everywhere.
  void validate() const;

  double clamp(std::size_t d, double v) const;
  void clamp(std::span<double> x) const;
  bool contains(std::span<const double> x) const;
};

}  // namespace cicrdbo
