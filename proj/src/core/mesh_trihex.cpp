#include "mesh.hpp"
#include "mesh_build.hpp"
#include "polygon.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace stagvc {

// Primary mesh: equilateral triangles with side a on a 60-degree rhombus.
// The triangle centers are the reflection orbit of the point at distances
// (a/3 along the base, sqrt(3)a/9 above it) in the base triangle, which
// realizes the equiangular hexagonal dual cells whose edges cross the
// primary edges at the one-third or mid points; adjacent centers are mirror
// images across the shared edge, so every edge pair is exactly orthogonal
// and the crossing bisects the dual edge.
MeshPtr build_tri_hex_mesh(int refinement) {
    if (refinement < 1)
        throw std::invalid_argument("build_tri_hex_mesh: refinement must be >= 1");

    const int n = 3 * refinement;   // lattice cells per rhombus side
    const double a = 1.0 / n;       // triangle side
    const double s3 = std::sqrt(3.0);

    auto m = std::make_shared<StaggeredMesh>();
    m->domain = {{0.0, 0.0}, {1.0, 0.0}, {1.5, s3 / 2.0}, {0.5, s3 / 2.0}};

    auto vpos = [&](int i, int j) -> Vec2 { return {i * a + 0.5 * j * a, 0.5 * s3 * j * a}; };

    // triangles on the extended range [-1, n] (one ghost ring outside the
    // rhombus, used only to complete boundary hexagons)
    const int R = n + 2;  // extended cells per row
    auto tid = [&](int i, int j, int down) { return ((j + 1) * R + (i + 1)) * 2 + down; };
    const int n_tris_ext = R * R * 2;
    std::vector<Vec2> center(n_tris_ext);
    std::vector<char> have(n_tris_ext, 0);

    struct SharedEdge { int i1, j1, i2, j2; };
    auto tri_neighbors = [&](int id, int out_ids[3], SharedEdge out_edges[3]) {
        int down = id % 2;
        int rest = id / 2;
        int i = rest % R - 1;
        int j = rest / R - 1;
        if (!down) {
            out_ids[0] = tid(i, j - 1, 1); out_edges[0] = {i, j, i + 1, j};
            out_ids[1] = tid(i - 1, j, 1); out_edges[1] = {i, j, i, j + 1};
            out_ids[2] = tid(i, j, 1);     out_edges[2] = {i + 1, j, i, j + 1};
        } else {
            out_ids[0] = tid(i, j, 0);     out_edges[0] = {i + 1, j, i, j + 1};
            out_ids[1] = tid(i, j + 1, 0); out_edges[1] = {i, j + 1, i + 1, j + 1};
            out_ids[2] = tid(i + 1, j, 0); out_edges[2] = {i + 1, j, i + 1, j + 1};
        }
    };
    auto in_ext = [&](int id) {
        int rest = id / 2;
        int i = rest % R - 1;
        int j = rest / R - 1;
        return i >= -1 && i <= n && j >= -1 && j <= n;
    };

    // seed center in the base up-triangle, propagate by edge reflections
    {
        int seed = tid(0, 0, 0);
        center[seed] = vpos(0, 0) + Vec2{a / 3.0, s3 * a / 9.0};
        have[seed] = 1;
        std::queue<int> q;
        q.push(seed);
        while (!q.empty()) {
            int t = q.front();
            q.pop();
            int nb[3];
            SharedEdge se[3];
            tri_neighbors(t, nb, se);
            for (int k = 0; k < 3; ++k) {
                if (!in_ext(nb[k]) || have[nb[k]]) continue;
                center[nb[k]] = reflect_across_line(center[t], vpos(se[k].i1, se[k].j1),
                                                    vpos(se[k].i2, se[k].j2));
                have[nb[k]] = 1;
                q.push(nb[k]);
            }
        }
    }

    // primary cells: in-domain triangles
    std::vector<int> cell_of_tri(n_tris_ext, -1);
    m->cells.reserve(2 * n * n);
    m->cell_polygons.reserve(2 * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            for (int down = 0; down < 2; ++down) {
                int id = tid(i, j, down);
                PrimaryCell c;
                c.center = center[id];
                c.area = s3 * a * a / 4.0;
                c.is_boundary = down ? (j == n - 1 || i == n - 1) : (j == 0 || i == 0);
                cell_of_tri[id] = static_cast<int>(m->cells.size());
                m->cells.push_back(c);
                if (!down)
                    m->cell_polygons.push_back({vpos(i, j), vpos(i + 1, j), vpos(i, j + 1)});
                else
                    m->cell_polygons.push_back({vpos(i + 1, j), vpos(i + 1, j + 1), vpos(i, j + 1)});
            }
        }
    }

    // dual cells: lattice vertices; hexagon of the six surrounding centers,
    // clipped to the rhombus for boundary vertices
    auto vid = [&](int i, int j) { return j * (n + 1) + i; };
    m->duals.resize((n + 1) * (n + 1));
    m->dual_polygons.resize(m->duals.size());
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            Vec2 p = vpos(i, j);
            int around[6] = {tid(i, j, 0),         tid(i - 1, j, 1),  tid(i - 1, j, 0),
                             tid(i - 1, j - 1, 1), tid(i, j - 1, 0),  tid(i, j - 1, 1)};
            std::vector<Vec2> hex;
            for (int k = 0; k < 6; ++k) hex.push_back(center[around[k]]);
            std::sort(hex.begin(), hex.end(), [&](Vec2 u, Vec2 v) {
                return std::atan2(u.y - p.y, u.x - p.x) < std::atan2(v.y - p.y, v.x - p.x);
            });
            std::vector<Vec2> clipped = clip_polygon(hex, m->domain);
            DualCell d;
            d.center = p;
            d.area = polygon_area(clipped);
            d.touches_boundary = (i == 0 || i == n || j == 0 || j == n);
            m->duals[vid(i, j)] = d;
            m->dual_polygons[vid(i, j)] = std::move(clipped);
        }
    }

    // edge pairs: lattice edges whose two triangles are both in-domain
    auto add_edge = [&](int t1, int t2, Vec2 q1, Vec2 q2, int v1, int v2) {
        if (cell_of_tri[t1] < 0 || cell_of_tri[t2] < 0) return;
        EdgePair e;
        Vec2 c1 = m->cells[cell_of_tri[t1]].center;
        Vec2 c2 = m->cells[cell_of_tri[t2]].center;
        e.normal = detail::orient_normal(normalized(c2 - c1));
        e.tangent = perp(e.normal);
        e.primary_len = dist(q1, q2);
        e.dual_len = dist(c1, c2);
        e.crossing = midpoint(c1, c2);
        e.area = 0.5 * e.primary_len * e.dual_len;
        e.n_cells = 2;
        e.cell = {cell_of_tri[t1], cell_of_tri[t2]};
        e.n_verts = 2;
        e.vert = {v1, v2};
        detail::set_edge_signs(e, m->cells, m->duals);
        m->edges.push_back(e);
    };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i < n; ++i)  // horizontal v(i,j)-v(i+1,j)
            add_edge(tid(i, j - 1, 1), tid(i, j, 0), vpos(i, j), vpos(i + 1, j), vid(i, j),
                     vid(i + 1, j));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= n; ++i)  // 60-degree v(i,j)-v(i,j+1)
            add_edge(tid(i - 1, j, 1), tid(i, j, 0), vpos(i, j), vpos(i, j + 1), vid(i, j),
                     vid(i, j + 1));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)  // 120-degree v(i+1,j)-v(i,j+1)
            add_edge(tid(i, j, 0), tid(i, j, 1), vpos(i + 1, j), vpos(i, j + 1), vid(i + 1, j),
                     vid(i, j + 1));

    detail::reorder_and_finalize(*m);
    return m;
}

} // namespace stagvc
