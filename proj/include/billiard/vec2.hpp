#pragma once

#include <cmath>

namespace billiard {

/// Plain 2-vector. One-dimensional problems run embedded on the first
/// coordinate with y identically zero, which keeps a single code path
/// through the integrator without losing exactness (all arithmetic on
/// the zero component stays exactly zero).
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
constexpr double norm_sq(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace billiard
