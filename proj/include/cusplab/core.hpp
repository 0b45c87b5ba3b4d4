#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace cusplab {

/// Bad arguments or configuration. The CLI maps this to exit code 2.
struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A solver, fit or quadrature failed. The CLI maps this to exit code 3.
struct numeric_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Neither normal-form hypothesis fits the data decisively.
struct unclassified_error : numeric_failure {
    using numeric_failure::numeric_failure;
};

struct Vec2 {
    double x = 0;
    double y = 0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::remainder(a, 2 * M_PI);
    if (a <= -M_PI) a += 2 * M_PI;
    return a;
}

}  // namespace cusplab
