#pragma once

#include <cmath>

namespace stagvc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 normalized(Vec2 a) {
    double n = norm(a);
    return {a.x / n, a.y / n};
}

/// k x a for the upward unit vector k: rotates a by +90 degrees.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 midpoint(Vec2 a, Vec2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

/// Reflection of p across the line through a and b.
inline Vec2 reflect_across_line(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    double t = dot(p - a, d) / dot(d, d);
    Vec2 foot = a + t * d;
    return 2.0 * foot - p;
}

} // namespace stagvc
