#pragma once

#include "vec2.hpp"

#include <functional>
#include <vector>

namespace stagvc {

using ScalarFn = std::function<double(Vec2)>;

/// Signed area of a simple polygon (positive if counterclockwise).
double polygon_signed_area(const std::vector<Vec2>& poly);

inline double polygon_area(const std::vector<Vec2>& poly) {
    return std::abs(polygon_signed_area(poly));
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly);

/// Clip a polygon against a convex polygon (Sutherland-Hodgman).
/// The clip polygon must be counterclockwise.
std::vector<Vec2> clip_polygon(const std::vector<Vec2>& subject,
                               const std::vector<Vec2>& clip);

/// Integral of f over the polygon by centroid-fan triangulation with the
/// 3-point edge-midpoint rule per triangle. Exact for polynomials of
/// degree <= 2.
double polygon_integral(const std::vector<Vec2>& poly, const ScalarFn& f);

/// polygon_integral / area.
double polygon_average(const std::vector<Vec2>& poly, const ScalarFn& f);

/// Average of f along the segment [a,b] by 3-point Gauss-Legendre.
/// Exact for polynomials of degree <= 5 along the segment.
double segment_average(Vec2 a, Vec2 b, const ScalarFn& f);

bool point_in_convex_polygon(Vec2 p, const std::vector<Vec2>& poly, double tol = 0.0);

} // namespace stagvc
