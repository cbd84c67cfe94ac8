#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace cicrdbo {

/// Seeded random stream used by every stochastic component.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// derives uniforms, normals, indices and permutations with explicit formulas
/// rather than the implementation-defined <random> distributions. A given seed
/// therefore yields the same run on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on the open interval (0, 1).
  double uniform_open();

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal();

  // Uniform integer on [0, n). n must be positive.
  std::size_t index(std::size_t n);

  // Fills `out` with independent uniforms on [0, 1).
  void fill_uniform(std::span<double> out);
  void fill_normal(std::span<double> out);

  // Fisher-Yates permutation of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Deterministic sub-stream seed for (base, stream) via splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace cicrdbo
