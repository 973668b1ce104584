#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "sdream/core.hpp"

namespace test {

using sdream::Complex;

inline double rel_diff(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// |got - want| <= tol * max(1, |want|)
inline double mixed_diff(Complex got, Complex want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Complex in_disk(double radius) {
  const double r = radius * std::sqrt(uniform(0.0, 1.0));
  const double th = uniform(-sdream::kPi, sdream::kPi);
  return std::polar(r, th);
}

}  // namespace test
