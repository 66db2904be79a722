#pragma once

#include <cmath>
#include <numbers>

namespace csdvn {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Snap tolerance used wherever a geometric quantity is compared against a
// cell boundary that is exact in real arithmetic (radians or cell units).
inline constexpr double kBoundaryTolerance = 1e-9;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Floating modulo with a result in [0, m).
inline double positive_mod(double a, double m) {
  double r = std::fmod(a, m);
  if (r < 0.0) r += m;
  if (r >= m) r -= m;
  return r;
}

inline double wrap_two_pi(double a) { return positive_mod(a, kTwoPi); }

/// Wraps to [-pi, pi).
inline double wrap_pi(double a) { return positive_mod(a + kPi, kTwoPi) - kPi; }

}  // namespace csdvn
