#pragma once

#include "mesh.hpp"

namespace stagvc {
namespace detail {

/// Orientation rule for generated normals: nonnegative dot with (1, 0.3),
/// tie broken by (-0.3, 1). Makes generated meshes deterministic; the
/// direction indicators absorb the sign.
inline Vec2 orient_normal(Vec2 n) {
    double d = n.x * 1.0 + n.y * 0.3;
    if (d > 1e-14) return n;
    if (d < -1e-14) return {-n.x, -n.y};
    return (-0.3 * n.x + n.y >= 0.0) ? n : Vec2{-n.x, -n.y};
}

/// Geometric direction indicators from stored normal/tangent and centers.
inline void set_edge_signs(EdgePair& e, const std::vector<PrimaryCell>& cells,
                           const std::vector<DualCell>& duals) {
    for (int k = 0; k < e.n_cells; ++k)
        e.cell_sign[k] = dot(e.normal, e.crossing - cells[e.cell[k]].center) > 0.0 ? 1 : -1;
    for (int k = 0; k < e.n_verts; ++k)
        e.vert_sign[k] = dot(e.tangent, e.crossing - duals[e.vert[k]].center) > 0.0 ? 1 : -1;
}

/// Permutes cells (interior first) and edges (interior first), remaps the
/// per-edge index lists, sets counts and h, and finalizes.
void reorder_and_finalize(StaggeredMesh& m);

} // namespace detail
} // namespace stagvc
