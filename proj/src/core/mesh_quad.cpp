#include "mesh.hpp"
#include "mesh_build.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stagvc {

namespace detail {

void reorder_and_finalize(StaggeredMesh& m) {
    const int nc = m.n_cells_total();
    std::vector<int> cell_order(nc);
    std::iota(cell_order.begin(), cell_order.end(), 0);
    std::stable_sort(cell_order.begin(), cell_order.end(), [&](int a, int b) {
        return m.cells[a].is_boundary < m.cells[b].is_boundary;
    });
    std::vector<int> cell_new(nc);
    for (int k = 0; k < nc; ++k) cell_new[cell_order[k]] = k;

    std::vector<PrimaryCell> cells(nc);
    for (int k = 0; k < nc; ++k) cells[k] = m.cells[cell_order[k]];
    m.cells.swap(cells);
    if (!m.cell_polygons.empty()) {
        std::vector<std::vector<Vec2>> polys(nc);
        for (int k = 0; k < nc; ++k) polys[k] = std::move(m.cell_polygons[cell_order[k]]);
        m.cell_polygons.swap(polys);
    }
    m.n_interior_cells = 0;
    for (auto& c : m.cells)
        if (!c.is_boundary) m.n_interior_cells++;

    const int nedge = m.n_edges_total();
    std::vector<int> edge_order(nedge);
    std::iota(edge_order.begin(), edge_order.end(), 0);
    std::stable_sort(edge_order.begin(), edge_order.end(), [&](int a, int b) {
        return m.edges[a].is_boundary() < m.edges[b].is_boundary();
    });
    std::vector<EdgePair> edges(nedge);
    m.n_interior_edges = 0;
    for (int k = 0; k < nedge; ++k) {
        edges[k] = m.edges[edge_order[k]];
        for (int j = 0; j < edges[k].n_cells; ++j) edges[k].cell[j] = cell_new[edges[k].cell[j]];
        if (!edges[k].is_boundary()) m.n_interior_edges++;
    }
    m.edges.swap(edges);

    m.h = 0.0;
    for (auto& e : m.edges) m.h = std::max(m.h, std::max(e.primary_len, e.dual_len));
    for (auto& e : m.edges)
        for (int k = 0; k < e.n_verts; ++k)
            m.duals[e.vert[k]].touches_boundary |= e.is_boundary();
    m.finalize();
}

} // namespace detail

MeshPtr build_quad_mesh(int nx, int ny, Vec2 lo, Vec2 hi) {
    if (nx < 2 || ny < 2)
        throw std::invalid_argument("build_quad_mesh: nx and ny must be >= 2");
    if (!(hi.x > lo.x && hi.y > lo.y))
        throw std::invalid_argument("build_quad_mesh: empty domain rectangle");

    const double hx = (hi.x - lo.x) / nx;
    const double hy = (hi.y - lo.y) / ny;
    auto m = std::make_shared<StaggeredMesh>();
    m->domain = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};

    // primary cells on the (nx+1) x (ny+1) lattice, clipped at the boundary
    auto cid = [&](int i, int j) { return j * (nx + 1) + i; };
    m->cells.resize((nx + 1) * (ny + 1));
    m->cell_polygons.resize(m->cells.size());
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            PrimaryCell c;
            c.center = {lo.x + i * hx, lo.y + j * hy};
            double x0 = std::max(lo.x, c.center.x - 0.5 * hx);
            double x1 = std::min(hi.x, c.center.x + 0.5 * hx);
            double y0 = std::max(lo.y, c.center.y - 0.5 * hy);
            double y1 = std::min(hi.y, c.center.y + 0.5 * hy);
            c.area = (x1 - x0) * (y1 - y0);
            c.is_boundary = (i == 0 || i == nx || j == 0 || j == ny);
            m->cells[cid(i, j)] = c;
            m->cell_polygons[cid(i, j)] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
        }
    }

    // dual cells at the cell midpoints
    auto vid = [&](int i, int j) { return j * nx + i; };
    m->duals.resize(nx * ny);
    m->dual_polygons.resize(m->duals.size());
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            DualCell d;
            d.center = {lo.x + (i + 0.5) * hx, lo.y + (j + 0.5) * hy};
            d.area = hx * hy;
            m->duals[vid(i, j)] = d;
            double x0 = lo.x + i * hx, x1 = x0 + hx, y0 = lo.y + j * hy, y1 = y0 + hy;
            m->dual_polygons[vid(i, j)] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
        }
    }

    // x-normal pairs: primary edge between cells (i,j) and (i+1,j)
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            EdgePair e;
            e.normal = detail::orient_normal({1.0, 0.0});
            e.tangent = perp(e.normal);
            e.primary_len = hy;
            e.dual_len = hx;
            e.crossing = {lo.x + (i + 0.5) * hx, lo.y + j * hy};
            e.n_cells = 2;
            e.cell = {cid(i, j), cid(i + 1, j)};
            if (j > 0 && j < ny) {
                e.n_verts = 2;
                e.vert = {vid(i, j - 1), vid(i, j)};
                e.area = 0.5 * hx * hy;
            } else {
                e.n_verts = 1;
                e.vert = {vid(i, j == 0 ? 0 : ny - 1), -1};
                e.area = 0.25 * hx * hy;
            }
            detail::set_edge_signs(e, m->cells, m->duals);
            m->edges.push_back(e);
        }
    }
    // y-normal pairs: primary edge between cells (i,j) and (i,j+1)
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            EdgePair e;
            e.normal = detail::orient_normal({0.0, 1.0});
            e.tangent = perp(e.normal);
            e.primary_len = hx;
            e.dual_len = hy;
            e.crossing = {lo.x + i * hx, lo.y + (j + 0.5) * hy};
            e.n_cells = 2;
            e.cell = {cid(i, j), cid(i, j + 1)};
            if (i > 0 && i < nx) {
                e.n_verts = 2;
                e.vert = {vid(i - 1, j), vid(i, j)};
                e.area = 0.5 * hx * hy;
            } else {
                e.n_verts = 1;
                e.vert = {vid(i == 0 ? 0 : nx - 1, j), -1};
                e.area = 0.25 * hx * hy;
            }
            detail::set_edge_signs(e, m->cells, m->duals);
            m->edges.push_back(e);
        }
    }

    detail::reorder_and_finalize(*m);
    return m;
}

} // namespace stagvc
