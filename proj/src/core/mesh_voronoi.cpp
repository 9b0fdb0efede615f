#include "delaunay.hpp"
#include "mesh.hpp"
#include "mesh_build.hpp"
#include "polygon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace stagvc {

namespace {

double dist_to_boundary(Vec2 p, const std::vector<Vec2>& poly) {
    double best = 1e300;
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        Vec2 a = poly[i], b = poly[(i + 1) % n];
        Vec2 d = b - a;
        double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
        best = std::min(best, dist(p, a + t * d));
    }
    return best;
}

/// Voronoi cell of seed k clipped to the domain: successive half-plane cuts
/// of the domain polygon against the Delaunay neighbors of k.
std::vector<Vec2> voronoi_cell(int k, const std::vector<Vec2>& seeds,
                               const std::vector<int>& neighbors,
                               const std::vector<Vec2>& domain) {
    std::vector<Vec2> poly = domain;
    for (int j : neighbors) {
        if (poly.empty()) break;
        Vec2 mid = midpoint(seeds[k], seeds[j]);
        Vec2 dir = perp(normalized(seeds[j] - seeds[k]));  // along the bisector
        // keep the side containing seed k: half plane left of (mid, mid+dir)
        // oriented so that k is on the kept side
        if (cross(dir, seeds[k] - mid) < 0.0) dir = -1.0 * dir;
        std::vector<Vec2> gate = {mid - 1e3 * dir, mid + 1e3 * dir};
        // Sutherland-Hodgman against the single half-plane edge
        std::vector<Vec2> out;
        const int n = static_cast<int>(poly.size());
        for (int i = 0; i < n; ++i) {
            Vec2 p = poly[i], q = poly[(i + 1) % n];
            double sp = cross(dir, p - mid);
            double sq = cross(dir, q - mid);
            if (sp >= 0.0) out.push_back(p);
            if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0))
                out.push_back(p + (sp / (sp - sq)) * (q - p));
        }
        poly.swap(out);
    }
    return poly;
}

} // namespace

MeshPtr build_voronoi_mesh_from_seeds(std::vector<Vec2> seeds,
                                      const std::vector<Vec2>& domain, int lloyd_iters) {
    if (seeds.size() < 4)
        throw std::invalid_argument("build_voronoi_mesh: need at least 4 seeds");
    if (domain.size() < 3 || polygon_signed_area(domain) <= 0.0)
        throw std::invalid_argument("build_voronoi_mesh: domain must be counterclockwise polygon");

    const int n = static_cast<int>(seeds.size());
    double scale = std::sqrt(polygon_area(domain));

    // deterministic lexicographic-style jitter resolving cocircular groups
    for (int k = 0; k < n; ++k) {
        unsigned long long u = 2654435761ull * (k + 1);
        double jx = ((u >> 8) % 2048) / 2048.0 - 0.5;
        double jy = ((u >> 19) % 2048) / 2048.0 - 0.5;
        seeds[k].x += 1e-12 * scale * jx;
        seeds[k].y += 1e-12 * scale * jy;
    }

    const double btol = 1e-9 * scale;
    std::vector<char> on_boundary(n, 0);
    for (int k = 0; k < n; ++k) on_boundary[k] = dist_to_boundary(seeds[k], domain) <= btol;

    std::vector<DelaunayTri> tris;
    std::vector<std::vector<int>> nbr;
    auto triangulate = [&]() {
        tris = delaunay_triangulate(seeds);
        nbr.assign(n, {});
        std::map<std::pair<int, int>, int> seen;
        for (auto& t : tris) {
            for (int k = 0; k < 3; ++k) {
                int a = t.v[k], b = t.v[(k + 1) % 3];
                auto key = std::minmax(a, b);
                if (!seen.count({key.first, key.second})) {
                    seen[{key.first, key.second}] = 1;
                    nbr[a].push_back(b);
                    nbr[b].push_back(a);
                }
            }
        }
        for (auto& v : nbr) std::sort(v.begin(), v.end());
    };
    triangulate();

    for (int it = 0; it < lloyd_iters; ++it) {
        for (int k = 0; k < n; ++k) {
            if (on_boundary[k]) continue;
            auto cell = voronoi_cell(k, seeds, nbr[k], domain);
            if (cell.size() >= 3) seeds[k] = polygon_centroid(cell);
        }
        triangulate();
    }

    auto m = std::make_shared<StaggeredMesh>();
    m->domain = domain;
    m->cells.resize(n);
    m->cell_polygons.resize(n);
    for (int k = 0; k < n; ++k) {
        auto cell = voronoi_cell(k, seeds, nbr[k], domain);
        if (cell.size() < 3)
            throw std::runtime_error("build_voronoi_mesh: empty Voronoi cell; degenerate seeds");
        m->cells[k] = {seeds[k], polygon_area(cell), on_boundary[k] != 0};
        m->cell_polygons[k] = std::move(cell);
    }
    const int nt = static_cast<int>(tris.size());
    m->duals.resize(nt);
    m->dual_polygons.resize(nt);
    for (int t = 0; t < nt; ++t) {
        std::vector<Vec2> poly = {seeds[tris[t].v[0]], seeds[tris[t].v[1]], seeds[tris[t].v[2]]};
        m->duals[t] = {tris[t].circumcenter, polygon_area(poly), false};
        m->dual_polygons[t] = std::move(poly);
    }

    // edge pairs: Delaunay edges with their adjacent triangles
    std::map<std::pair<int, int>, std::array<int, 2>> edge_tris;
    for (int t = 0; t < nt; ++t) {
        for (int k = 0; k < 3; ++k) {
            auto key = std::minmax(tris[t].v[k], tris[t].v[(k + 1) % 3]);
            auto it = edge_tris.find({key.first, key.second});
            if (it == edge_tris.end())
                edge_tris[{key.first, key.second}] = {t, -1};
            else
                it->second[1] = t;
        }
    }
    for (auto& [key, ts] : edge_tris) {
        int s1 = key.first, s2 = key.second;
        EdgePair e;
        Vec2 c1 = seeds[s1], c2 = seeds[s2];
        e.normal = detail::orient_normal(normalized(c2 - c1));
        e.tangent = perp(e.normal);
        e.dual_len = dist(c1, c2);
        e.crossing = midpoint(c1, c2);  // the bisector crosses the edge at its midpoint
        e.n_cells = 2;
        e.cell = {s1, s2};
        if (ts[1] >= 0) {
            e.n_verts = 2;
            e.vert = {ts[0], ts[1]};
            e.primary_len = dist(m->duals[ts[0]].center, m->duals[ts[1]].center);
            e.area = 0.5 * e.primary_len * e.dual_len;
        } else {
            e.n_verts = 1;
            e.vert = {ts[0], -1};
            e.primary_len = 2.0 * dist(m->duals[ts[0]].center, e.crossing);
            e.area = 0.25 * e.primary_len * e.dual_len;
        }
        if (e.primary_len <= 0.0 || e.dual_len <= 0.0)
            throw std::runtime_error("build_voronoi_mesh: zero-length edge; degenerate seeds");
        detail::set_edge_signs(e, m->cells, m->duals);
        m->edges.push_back(e);
    }

    detail::reorder_and_finalize(*m);
    return m;
}

MeshPtr build_voronoi_mesh(int seed_count, const std::vector<Vec2>& domain, int lloyd_iters,
                           unsigned long long rng_seed) {
    if (seed_count < 4)
        throw std::invalid_argument("build_voronoi_mesh: seed_count must be >= 4");
    if (domain.size() < 3 || polygon_signed_area(domain) <= 0.0)
        throw std::invalid_argument("build_voronoi_mesh: domain must be counterclockwise polygon");

    double area = polygon_area(domain);
    double spacing = std::sqrt(area / seed_count);
    std::vector<Vec2> seeds;

    // boundary seeds: polygon corners plus evenly spaced points per side
    const int nsides = static_cast<int>(domain.size());
    for (int i = 0; i < nsides; ++i) {
        Vec2 a = domain[i], b = domain[(i + 1) % nsides];
        int k = std::max(1, static_cast<int>(std::lround(dist(a, b) / spacing)));
        for (int j = 0; j < k; ++j) seeds.push_back(a + (static_cast<double>(j) / k) * (b - a));
    }

    // interior seeds: uniform rejection sampling, kept clear of the boundary
    Vec2 lo = domain[0], hi = domain[0];
    for (auto& p : domain) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
    }
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y);
    int placed = 0;
    long long guard = 0;
    while (placed < seed_count) {
        if (++guard > 1000000ll * seed_count)
            throw std::runtime_error("build_voronoi_mesh: interior sampling failed");
        Vec2 p{ux(rng), uy(rng)};
        if (!point_in_convex_polygon(p, domain)) continue;
        if (dist_to_boundary(p, domain) < 0.45 * spacing) continue;
        seeds.push_back(p);
        ++placed;
    }
    return build_voronoi_mesh_from_seeds(std::move(seeds), domain, lloyd_iters);
}

} // namespace stagvc
