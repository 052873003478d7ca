#pragma once

#include <cmath>
#include <complex>

namespace circpot {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// counterclockwise rotation by pi/2: (x, y) -> (-y, x)
inline Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }

inline std::complex<double> to_complex(const Vec2& v) { return {v.x, v.y}; }
inline Vec2 to_vec2(const std::complex<double>& z) { return {z.real(), z.imag()}; }

// symmetric 2x2 matrix, used for Hessians of harmonic fields
struct Mat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    Mat2 operator-(const Mat2& o) const { return {xx - o.xx, xy - o.xy, yy - o.yy}; }
    double trace() const { return xx + yy; }
    double max_abs() const {
        return std::max({std::abs(xx), std::abs(xy), std::abs(yy)});
    }
};

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// reduce an angle to (-pi, pi]
inline double reduce_angle(double a) {
    a = std::remainder(a, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    return a;
}

}  // namespace circpot
