#include "delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace stagvc {

namespace {

struct Tri {
    int a, b, c;      // counterclockwise
    bool alive = true;
};

Vec2 circumcenter_of(Vec2 A, Vec2 B, Vec2 C) {
    double bx = B.x - A.x, by = B.y - A.y;
    double cx = C.x - A.x, cy = C.y - A.y;
    double d = 2.0 * (bx * cy - by * cx);
    double b2 = bx * bx + by * by;
    double c2 = cx * cx + cy * cy;
    return {A.x + (cy * b2 - by * c2) / d, A.y + (bx * c2 - cx * b2) / d};
}

bool in_circumcircle(Vec2 A, Vec2 B, Vec2 C, Vec2 p) {
    double ax = A.x - p.x, ay = A.y - p.y;
    double bx = B.x - p.x, by = B.y - p.y;
    double cx = C.x - p.x, cy = C.y - p.y;
    double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                 (bx * bx + by * by) * (ax * cy - cx * ay) +
                 (cx * cx + cy * cy) * (ax * by - bx * ay);
    return det > 0.0;  // assumes ABC counterclockwise
}

} // namespace

std::vector<DelaunayTri> delaunay_triangulate(const std::vector<Vec2>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 3) throw std::runtime_error("delaunay: need at least 3 points");

    Vec2 lo = points[0], hi = points[0];
    for (auto& p : points) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
    }
    double span = std::max(hi.x - lo.x, hi.y - lo.y);
    if (span <= 0.0) throw std::runtime_error("delaunay: degenerate point set");
    Vec2 mid = midpoint(lo, hi);

    std::vector<Vec2> pts = points;
    pts.push_back({mid.x - 20.0 * span, mid.y - 10.0 * span});
    pts.push_back({mid.x + 20.0 * span, mid.y - 10.0 * span});
    pts.push_back({mid.x, mid.y + 20.0 * span});
    const int s0 = n, s1 = n + 1, s2 = n + 2;

    std::vector<Tri> tris;
    tris.push_back({s0, s1, s2});

    for (int ip = 0; ip < n; ++ip) {
        Vec2 p = pts[ip];
        // cavity = triangles whose circumcircle contains p
        std::map<std::pair<int, int>, int> boundary;  // directed edge -> count
        bool any = false;
        for (auto& t : tris) {
            if (!t.alive) continue;
            if (in_circumcircle(pts[t.a], pts[t.b], pts[t.c], p)) {
                t.alive = false;
                any = true;
                std::pair<int, int> es[3] = {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
                for (auto& e : es) {
                    auto rev = std::make_pair(e.second, e.first);
                    auto it = boundary.find(rev);
                    if (it != boundary.end())
                        boundary.erase(it);
                    else
                        boundary[e] = 1;
                }
            }
        }
        if (!any) throw std::runtime_error("delaunay: point insertion found no cavity");
        for (auto& [e, cnt] : boundary) {
            (void)cnt;
            tris.push_back({e.first, e.second, ip});
        }
        // compact occasionally
        if (tris.size() > 4096 && tris.size() % 1024 == 0) {
            std::vector<Tri> keep;
            keep.reserve(tris.size());
            for (auto& t : tris)
                if (t.alive) keep.push_back(t);
            tris.swap(keep);
        }
    }

    std::vector<DelaunayTri> out;
    for (auto& t : tris) {
        if (!t.alive) continue;
        if (t.a >= n || t.b >= n || t.c >= n) continue;  // touches super-triangle
        DelaunayTri d;
        d.v = {t.a, t.b, t.c};
        if (cross(pts[t.b] - pts[t.a], pts[t.c] - pts[t.a]) < 0.0) std::swap(d.v[1], d.v[2]);
        d.circumcenter = circumcenter_of(pts[d.v[0]], pts[d.v[1]], pts[d.v[2]]);
        out.push_back(d);
    }
    if (out.empty()) throw std::runtime_error("delaunay: triangulation failed");
    // deterministic order
    std::sort(out.begin(), out.end(), [](const DelaunayTri& x, const DelaunayTri& y) {
        auto kx = std::min({x.v[0], x.v[1], x.v[2]});
        auto ky = std::min({y.v[0], y.v[1], y.v[2]});
        if (kx != ky) return kx < ky;
        auto sx = x.v[0] + x.v[1] + x.v[2];
        auto sy = y.v[0] + y.v[1] + y.v[2];
        return sx != sy ? sx < sy : std::max({x.v[0], x.v[1], x.v[2]}) <
                                        std::max({y.v[0], y.v[1], y.v[2]});
    });
    return out;
}

} // namespace stagvc
