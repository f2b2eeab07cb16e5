#pragma once

#include "dermat/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace dermat {

/// Seeded rational coordinates: numerators in [-9, 9], denominators in {1, 2, 3}.
/// Draws are taken straight from mt19937_64 output, whose sequence is fixed by
/// the standard, so samples are identical across platforms.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  Rational rational() {
    const long num = static_cast<long>(engine_() % 19) - 9;
    const long den = 1 + static_cast<long>(engine_() % 3);
    return make_rational(num, den);
  }

  Vector vector(std::size_t dim) {
    Vector v(dim);
    for (auto& x : v) x = rational();
    return v;
  }

  std::vector<Vector> vectors(std::size_t dim, std::size_t count) {
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) out.push_back(vector(dim));
    return out;
  }

  std::vector<std::pair<Vector, Vector>> pairs(std::size_t dim, std::size_t count) {
    std::vector<std::pair<Vector, Vector>> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
      Vector x = vector(dim);
      out.emplace_back(std::move(x), vector(dim));
    }
    return out;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t default_seed = 42;
inline constexpr std::size_t default_samples = 100;

}  // namespace dermat
