#ifndef KICKOFF_COMMON_VEC2_HPP_
#define KICKOFF_COMMON_VEC2_HPP_

#include <cmath>

namespace kickoff {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }

  Vec2 normalized() const {
    const double n = norm();
    if (n == 0.0) return {0.0, 0.0};
    return {x / n, y / n};
  }

  // Rotation by angle theta (counterclockwise).
  Vec2 rotated(double theta) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {x * c - y * s, x * s + y * c};
  }

  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

inline double distance2(const Vec2& a, const Vec2& b) { return (a - b).norm2(); }

}  // namespace kickoff

#endif  // KICKOFF_COMMON_VEC2_HPP_
