#pragma once

#include <cmath>
#include <numbers>

namespace solenoid {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Point or displacement in the lattice plane, in units of the lattice constant.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline constexpr bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline Vec2 midpoint(Vec2 a, Vec2 b) { return 0.5 * (a + b); }

/// Reduces an angle to the principal branch (-pi, pi].
inline double wrap_angle(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

/// Distance between two angles on the circle, in [0, pi].
inline double angular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace solenoid
