#pragma once

#include "vec2.hpp"

#include <array>
#include <vector>

namespace stagvc {

struct DelaunayTri {
    std::array<int, 3> v;  // counterclockwise
    Vec2 circumcenter;
};

/// Incremental Bowyer-Watson triangulation. Points must be distinct;
/// cocircular groups are the caller's concern (see the jitter applied by
/// build_voronoi_mesh). Throws on insertion failure.
std::vector<DelaunayTri> delaunay_triangulate(const std::vector<Vec2>& points);

} // namespace stagvc
