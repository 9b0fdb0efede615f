#include "polygon.hpp"

namespace stagvc {

double polygon_signed_area(const std::vector<Vec2>& poly) {
    double s = 0.0;
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        s += cross(a, b);
    }
    return 0.5 * s;
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
    double a6 = 0.0;
    Vec2 c{0.0, 0.0};
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        double w = cross(p, q);
        a6 += w;
        c.x += (p.x + q.x) * w;
        c.y += (p.y + q.y) * w;
    }
    return {c.x / (3.0 * a6), c.y / (3.0 * a6)};
}

std::vector<Vec2> clip_polygon(const std::vector<Vec2>& subject,
                               const std::vector<Vec2>& clip) {
    std::vector<Vec2> out = subject;
    const int m = static_cast<int>(clip.size());
    for (int i = 0; i < m && !out.empty(); ++i) {
        Vec2 a = clip[i];
        Vec2 b = clip[(i + 1) % m];
        Vec2 edge = b - a;
        std::vector<Vec2> in;
        in.swap(out);
        const int n = static_cast<int>(in.size());
        for (int j = 0; j < n; ++j) {
            Vec2 p = in[j];
            Vec2 q = in[(j + 1) % n];
            double sp = cross(edge, p - a);
            double sq = cross(edge, q - a);
            if (sp >= 0.0) out.push_back(p);
            if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
                double t = sp / (sp - sq);
                out.push_back(p + t * (q - p));
            }
        }
    }
    return out;
}

double polygon_integral(const std::vector<Vec2>& poly, const ScalarFn& f) {
    Vec2 c = polygon_centroid(poly);
    double total = 0.0;
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        Vec2 p = poly[i];
        Vec2 q = poly[(i + 1) % n];
        // signed triangle (c, p, q); midpoint rule on the three edge midpoints
        double a2 = cross(p - c, q - c); // 2 * signed area
        Vec2 m1 = midpoint(c, p);
        Vec2 m2 = midpoint(p, q);
        Vec2 m3 = midpoint(q, c);
        total += a2 / 6.0 * (f(m1) + f(m2) + f(m3));
    }
    return total;
}

double polygon_average(const std::vector<Vec2>& poly, const ScalarFn& f) {
    return polygon_integral(poly, f) / polygon_signed_area(poly);
}

double segment_average(Vec2 a, Vec2 b, const ScalarFn& f) {
    static const double x = std::sqrt(3.0 / 5.0);
    static const double pts[3] = {-x, 0.0, x};
    static const double wts[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
        double t = 0.5 * (1.0 + pts[k]);
        s += wts[k] * f(a + t * (b - a));
    }
    return 0.5 * s;
}

bool point_in_convex_polygon(Vec2 p, const std::vector<Vec2>& poly, double tol) {
    const int n = static_cast<int>(poly.size());
    double orient = polygon_signed_area(poly) >= 0.0 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) {
        Vec2 a = poly[i];
        Vec2 b = poly[(i + 1) % n];
        if (orient * cross(b - a, p - a) < -tol) return false;
    }
    return true;
}

} // namespace stagvc
