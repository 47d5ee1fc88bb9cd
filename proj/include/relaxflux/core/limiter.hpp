#pragma once

#include <cmath>

namespace relaxflux {

// Argument of smallest magnitude when all three share a sign, otherwise 0.
// The caller pre-scales the one-sided differences by the limiter parameter.
constexpr double minmod3(double left, double center, double right) noexcept {
  if (left > 0.0 && center > 0.0 && right > 0.0) {
    double m = left < center ? left : center;
    return m < right ? m : right;
  }
  if (left < 0.0 && center < 0.0 && right < 0.0) {
    double m = left > center ? left : center;
    return m > right ? m : right;
  }
  return 0.0;
}

// Limiter configuration shared by the second-order schemes.
struct Limiter {
  bool enabled = false;
  double alpha = 2.0;

  static Limiter off() { return {}; }
  static Limiter minmod(double alpha = 2.0) { return {true, alpha}; }
};

}  // namespace relaxflux
