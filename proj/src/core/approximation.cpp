#include "approximation.hpp"

#include "polygon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stagvc {

namespace {

ScalarFn bind(const ScalarFn2& f) {
    return [&f](Vec2 p) { return f(p.x, p.y); };
}

void require_polygons(const MeshPtr& mesh, const char* what) {
    if (!mesh->has_polygons())
        throw std::invalid_argument(std::string(what) +
                                    ": mesh carries no cell polygons (file-loaded mesh?)");
}

} // namespace

EdgeField restrict_general(const SmoothVectorField& u, const MeshPtr& mesh, double tol) {
    require_polygons(mesh, "restrict_general");
    VertexField omega(mesh);
    for (int nu = 0; nu < mesh->n_verts(); ++nu)
        omega.v[nu] = u.omega(mesh->duals[nu].center.x, mesh->duals[nu].center.y);
    CellField delta(mesh);
    for (int i = 0; i < mesh->n_cells_total(); ++i)
        delta.v[i] = polygon_average(mesh->cell_polygons[i], bind(u.delta));
    // the continuous compatibility integral vanishes for admissible u; the
    // quadrature leaves a tiny mean which the reconstruction requires gone
    shift_to_zero_mean(delta);
    return reconstruct_from_curl_div(omega, delta, tol);
}

FImageGeneral prolong_general(const EdgeField& u) { return {curl(u), div(u)}; }

EdgeField restrict_stokes(const SmoothVectorField& u, const MeshPtr& mesh) {
    if (!u.psi) throw std::invalid_argument("restrict_stokes: field carries no stream function");
    VertexField psi(mesh);
    for (int nu = 0; nu < mesh->n_verts(); ++nu)
        psi.v[nu] = mesh->duals[nu].touches_boundary
                        ? 0.0
                        : u.psi(mesh->duals[nu].center.x, mesh->duals[nu].center.y);
    return skew_grad(psi);
}

FImageStokes prolong_stokes(const EdgeField& u) {
    return {integrate_stream(u), curl(u)};
}

EdgeField restrict_by_edge_averaging(const SmoothVectorField& u, const MeshPtr& mesh,
                                     EdgeAverage choice) {
    EdgeField r(mesh);
    for (int e = 0; e < mesh->n_edges_total(); ++e) {
        const EdgePair& ep = mesh->edges[e];
        ScalarFn un = [&](Vec2 p) {
            return u.ux(p.x, p.y) * ep.normal.x + u.uy(p.x, p.y) * ep.normal.y;
        };
        Vec2 a, b;
        switch (choice) {
            case EdgeAverage::DualEdge:
                a = mesh->cells[ep.cell[0]].center;
                b = ep.n_cells == 2 ? mesh->cells[ep.cell[1]].center : ep.crossing;
                break;
            case EdgeAverage::PrimaryEdge:
                if (ep.n_verts == 2) {
                    a = mesh->duals[ep.vert[0]].center;
                    b = mesh->duals[ep.vert[1]].center;
                } else {  // in-domain half of a boundary pair
                    a = ep.crossing;
                    b = mesh->duals[ep.vert[0]].center;
                }
                break;
            case EdgeAverage::PrimaryFirstThird: {
                Vec2 lo, hi;
                if (ep.n_verts == 2) {
                    int k = mesh->edges[e].vert[0] < mesh->edges[e].vert[1] ? 0 : 1;
                    lo = mesh->duals[ep.vert[k]].center;
                    hi = mesh->duals[ep.vert[1 - k]].center;
                } else {
                    lo = ep.crossing;
                    hi = mesh->duals[ep.vert[0]].center;
                }
                a = lo;
                b = lo + (1.0 / 3.0) * (hi - lo);
                break;
            }
        }
        r.v[e] = segment_average(a, b, un);
    }
    return r;
}

double c1_error(const SmoothVectorField& u, ApproxVariant variant, const MeshPtr& mesh,
                double tol) {
    require_polygons(mesh, "c1_error");
    double err2 = 0.0;
    if (variant == ApproxVariant::General) {
        EdgeField uh = restrict_general(u, mesh, tol);
        VertexField wh = curl(uh);
        CellField dh = div(uh);
        for (int nu = 0; nu < mesh->n_verts(); ++nu) {
            double proj = polygon_average(mesh->dual_polygons[nu], bind(u.omega));
            double d = wh.v[nu] - proj;
            err2 += mesh->duals[nu].area * d * d;
        }
        for (int i = 0; i < mesh->n_cells_total(); ++i) {
            double proj = polygon_average(mesh->cell_polygons[i], bind(u.delta));
            double d = dh.v[i] - proj;
            err2 += mesh->cells[i].area * d * d;
        }
    } else {
        EdgeField uh = restrict_stokes(u, mesh);
        FImageStokes im = prolong_stokes(uh);
        for (int nu = 0; nu < mesh->n_verts(); ++nu) {
            double proj_psi = polygon_average(mesh->dual_polygons[nu], bind(u.psi));
            double proj_omega = polygon_average(mesh->dual_polygons[nu], bind(u.omega));
            double d1 = im.psi.v[nu] - proj_psi;
            double d2 = im.omega.v[nu] - proj_omega;
            err2 += mesh->duals[nu].area * (d1 * d1 + d2 * d2);
        }
    }
    return std::sqrt(err2);
}

std::vector<double> distinct_values(const std::vector<double>& values,
                                    const std::vector<char>& mask, double tol) {
    std::vector<double> picked;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!mask.empty() && !mask[i]) continue;
        bool found = false;
        for (double& p : picked) {
            if (std::abs(values[i] - p) <= tol) {
                found = true;
                break;
            }
        }
        if (!found) picked.push_back(values[i]);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

} // namespace stagvc
