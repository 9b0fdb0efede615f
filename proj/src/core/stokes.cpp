#include "stokes.hpp"

#include "polygon.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stagvc {

StokesForcing discretize_forcing(const ScalarFn2& psi_f, const ScalarFn2& phi_f,
                                 const MeshPtr& mesh) {
    if (!mesh->has_polygons())
        throw std::invalid_argument("discretize_forcing: mesh carries no polygons");
    StokesForcing f;
    f.psi_f = VertexField(mesh);
    for (int nu = 0; nu < mesh->n_verts(); ++nu)
        f.psi_f.v[nu] = polygon_average(mesh->dual_polygons[nu],
                                        [&](Vec2 p) { return psi_f(p.x, p.y); });
    f.phi_f = CellField(mesh);
    for (int i = 0; i < mesh->n_cells_total(); ++i)
        f.phi_f.v[i] = polygon_average(mesh->cell_polygons[i],
                                       [&](Vec2 p) { return phi_f(p.x, p.y); });
    shift_to_zero_mean(f.phi_f);  // the H1/R gauge of the potential part
    EdgeField a = skew_grad(f.psi_f);
    EdgeField b = grad(f.phi_f);
    f.f = EdgeField(mesh);
    for (int e = 0; e < f.f.size(); ++e) f.f.v[e] = a.v[e] + b.v[e];
    return f;
}

StokesSolution solve_stokes(const StokesForcing& forcing, const MeshPtr& mesh, double tol) {
    Operators ops(mesh);
    const CsrMatrix& L = ops.laplacian_vertex_matrix();
    const int nv = mesh->n_verts();

    std::vector<int> interior;  // unknowns: psi on non-boundary duals
    interior.reserve(nv);
    for (int nu = 0; nu < nv; ++nu)
        if (!mesh->duals[nu].touches_boundary) interior.push_back(nu);
    const int n = static_cast<int>(interior.size());
    std::vector<int> slot(nv, -1);
    for (int k = 0; k < n; ++k) slot[interior[k]] = k;

    std::vector<double> W(nv);
    for (int nu = 0; nu < nv; ++nu) W[nu] = mesh->duals[nu].area;

    StokesSolution sol;
    sol.psi = VertexField(mesh);
    sol.u = EdgeField(mesh);
    sol.p = CellField(mesh);

    if (n > 0) {
        // S = P^T L^T W L P applied matrix-free through the assembled L
        std::vector<double> full(nv), Lx(nv);
        SparseSystem sys;
        sys.n = n;
        sys.apply = [&](const std::vector<double>& x, std::vector<double>& y) {
            std::fill(full.begin(), full.end(), 0.0);
            for (int k = 0; k < n; ++k) full[interior[k]] = x[k];
            Lx = L.apply(full);
            for (int nu = 0; nu < nv; ++nu) Lx[nu] *= W[nu];
            std::vector<double> LtWLx = L.apply_transposed(Lx);
            y.resize(n);
            for (int k = 0; k < n; ++k) y[k] = LtWLx[interior[k]];
        };
        // rhs = -P^T L^T W psi_f
        {
            std::vector<double> Wpsif(nv);
            for (int nu = 0; nu < nv; ++nu) Wpsif[nu] = W[nu] * forcing.psi_f.v[nu];
            std::vector<double> r = L.apply_transposed(Wpsif);
            sys.rhs.resize(n);
            for (int k = 0; k < n; ++k) sys.rhs[k] = -r[interior[k]];
        }
        // Jacobi diagonal of S
        {
            std::vector<double> d(nv, 0.0);
            for (int r = 0; r < L.rows; ++r)
                for (int k = L.row_ptr[r]; k < L.row_ptr[r + 1]; ++k)
                    d[L.col_idx[k]] += W[r] * L.values[k] * L.values[k];
            sys.jacobi.resize(n);
            for (int k = 0; k < n; ++k) sys.jacobi[k] = d[interior[k]];
        }
        sys.tol = tol;
        sys.max_iter = 60 * n;
        std::vector<double> x = solve_cg(sys, &sol.stats);
        if (!sol.stats.converged)
            throw std::runtime_error("solve_stokes: CG stalled at relative residual " +
                                     std::to_string(sol.stats.rel_residual));
        for (int k = 0; k < n; ++k) sol.psi.v[interior[k]] = x[k];
    }

    sol.u = skew_grad(sol.psi);
    CellField d = div(sol.u);
    sol.div_max = max_abs(d.v);
    sol.energy_lhs = semi_h1(sol.u);
    sol.energy_rhs = norm_l2(forcing.psi_f);
    return sol;
}

void recover_pressure(StokesSolution& sol, const StokesForcing& forcing, double curl_tol) {
    const MeshPtr& mesh = sol.u.mesh;
    VertexField omega = curl(sol.u);
    EdgeField sg = skew_grad(omega);
    EdgeField g(mesh);
    for (int e = 0; e < g.size(); ++e) g.v[e] = forcing.f.v[e] + sg.v[e];

    // Eq for the pressure gradient must be discretely irrotational on
    // interior duals before a potential exists
    VertexField cg_field = curl(g);
    for (int nu = 0; nu < mesh->n_verts(); ++nu) {
        if (mesh->duals[nu].touches_boundary) continue;
        if (std::abs(cg_field.v[nu]) > curl_tol) {
            std::ostringstream os;
            os << "recover_pressure: curl of the momentum residue is " << cg_field.v[nu]
               << " at interior dual " << nu << " (u is not a discrete solution)";
            throw std::runtime_error(os.str());
        }
    }

    sol.p = integrate_potential_interior(g);

    // residual of the momentum equation on interior edges
    EdgeField gp = grad(sol.p);
    double r = 0.0;
    for (int e = 0; e < mesh->n_interior_edges; ++e)
        r = std::max(r, std::abs(gp.v[e] - g.v[e]));
    sol.eq_residual = r;
}

std::string ConvergenceRecord::to_csv() const {
    std::ostringstream os;
    os << "level,h,e_psi,e_omega,order_psi,order_omega,energy_lhs,energy_rhs,cg_iters\n";
    char buf[512];
    for (const StudyRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      r.level, r.h, r.e_psi, r.e_omega, r.order_psi, r.order_omega,
                      r.energy_lhs, r.energy_rhs, r.cg_iters);
        os << buf;
    }
    return os.str();
}

ConvergenceRecord convergence_study(const StokesExact& exact,
                                    const std::vector<MeshPtr>& meshes, double tol) {
    ConvergenceRecord rec;
    int level = 0;
    for (const MeshPtr& mesh : meshes) {
        StokesForcing f = discretize_forcing(
            [&](double x, double y) { return -exact.omega(x, y); }, exact.pressure, mesh);
        StokesSolution sol = solve_stokes(f, mesh, tol);
        recover_pressure(sol, f);

        VertexField wh = curl(sol.u);
        double e_psi2 = 0.0, e_omega2 = 0.0;
        for (int nu = 0; nu < mesh->n_verts(); ++nu) {
            double pv = sol.psi.v[nu];
            double wv = wh.v[nu];
            e_psi2 += polygon_integral(mesh->dual_polygons[nu], [&](Vec2 p) {
                double d = pv - exact.psi(p.x, p.y);
                return d * d;
            });
            e_omega2 += polygon_integral(mesh->dual_polygons[nu], [&](Vec2 p) {
                double d = wv - exact.omega(p.x, p.y);
                return d * d;
            });
        }
        StudyRow row;
        row.level = ++level;
        row.h = mesh->h;
        row.e_psi = std::sqrt(e_psi2);
        row.e_omega = std::sqrt(e_omega2);
        row.energy_lhs = sol.energy_lhs;
        row.energy_rhs = sol.energy_rhs;
        row.cg_iters = sol.stats.iterations;
        if (!rec.rows.empty()) {
            const StudyRow& prev = rec.rows.back();
            double lh = std::log(prev.h / row.h);
            if (row.e_psi > 0.0 && prev.e_psi > 0.0)
                row.order_psi = std::log(prev.e_psi / row.e_psi) / lh;
            if (row.e_omega > 0.0 && prev.e_omega > 0.0)
                row.order_omega = std::log(prev.e_omega / row.e_omega) / lh;
        }
        rec.rows.push_back(row);
    }
    return rec;
}

} // namespace stagvc
