#pragma once
#include <cmath>
#include <random>

#include "aquaquad/types.hpp"

namespace aquaquad::test {

inline std::mt19937& rng() {
  static std::mt19937 gen(20240517u);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

// Random attitude away from the gimbal-lock guard.
inline Vec3 random_angles(double theta_max = 1.45) {
  return {uniform(-M_PI, M_PI), uniform(-theta_max, theta_max),
          uniform(-M_PI, M_PI)};
}

inline Vec3 random_vec(double scale) {
  return {uniform(-scale, scale), uniform(-scale, scale),
          uniform(-scale, scale)};
}

}  // namespace aquaquad::test
