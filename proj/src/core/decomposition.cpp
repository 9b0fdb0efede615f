#include "decomposition.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace stagvc {

namespace {

// Bilinear-form matrix of the negative cell Laplacian, K = G^T W_E G,
// assembled so that phi^T K phi = |grad phi|_0h^2 exactly.
CsrMatrix stiffness_cell(const Operators& ops) {
    const CsrMatrix& g = ops.grad_matrix();
    const StaggeredMesh& m = *ops.mesh();
    std::vector<Triplet> t;
    for (int e = 0; e < g.rows; ++e)
        for (int k = g.row_ptr[e]; k < g.row_ptr[e + 1]; ++k)
            for (int j = g.row_ptr[e]; j < g.row_ptr[e + 1]; ++j)
                t.push_back({g.col_idx[k], g.col_idx[j],
                             m.edges[e].area * g.values[k] * g.values[j]});
    return csr_from_triplets(g.cols, g.cols, std::move(t));
}

CsrMatrix stiffness_vertex(const Operators& ops) {
    const CsrMatrix& g = ops.skew_grad_matrix();
    const StaggeredMesh& m = *ops.mesh();
    std::vector<Triplet> t;
    for (int e = 0; e < g.rows; ++e)
        for (int k = g.row_ptr[e]; k < g.row_ptr[e + 1]; ++k)
            for (int j = g.row_ptr[e]; j < g.row_ptr[e + 1]; ++j)
                t.push_back({g.col_idx[k], g.col_idx[j],
                             m.edges[e].area * g.values[k] * g.values[j]});
    return csr_from_triplets(g.cols, g.cols, std::move(t));
}

std::vector<double> weights_cell(const StaggeredMesh& m) {
    std::vector<double> w(m.n_cells_total());
    for (int i = 0; i < m.n_cells_total(); ++i) w[i] = m.cells[i].area;
    return w;
}

std::vector<double> weights_vertex(const StaggeredMesh& m) {
    std::vector<double> w(m.n_verts());
    for (int i = 0; i < m.n_verts(); ++i) w[i] = m.duals[i].area;
    return w;
}

// Solves K x = W b for the bilinear-form matrix K of a (semi)definite
// Laplacian; `singular` adds the constant-vector gauge projection.
std::vector<double> solve_stiffness(const CsrMatrix& K, const std::vector<double>& W,
                                    const std::vector<double>& b, bool singular, double tol,
                                    SolveStats* stats) {
    SparseSystem sys;
    sys.n = K.rows;
    sys.apply = [&K](const std::vector<double>& x, std::vector<double>& y) { y = K.apply(x); };
    sys.rhs.resize(K.rows);
    for (int i = 0; i < K.rows; ++i) sys.rhs[i] = W[i] * b[i];
    sys.jacobi = K.diagonal();
    if (singular) sys.constraint.assign(K.rows, 1.0);
    sys.tol = tol;
    return solve_cg(sys, stats);
}

} // namespace

HelmholtzParts helmholtz_decompose(const EdgeField& u, double tol) {
    const MeshPtr& mesh = u.mesh;
    Operators ops(mesh);
    HelmholtzParts out;

    // Eq. 88 route: the 1/2 of the integration-by-parts identity cancels in
    // the bilinear form, so K psi = -W curl(u) with K = SG^T W_E SG scaled
    // by 1/... ; here K is |skew_grad psi|^2's matrix and the weak form of
    // laplacian_vertex(psi) = curl(u) reads K psi = -(1/2) W curl(u).
    VertexField w = curl(u);
    CsrMatrix Kv = stiffness_vertex(ops);
    std::vector<double> Wv = weights_vertex(*mesh);
    std::vector<double> rhs_v(w.size());
    for (int i = 0; i < w.size(); ++i) rhs_v[i] = -0.5 * w.v[i];
    bool vertex_singular = mesh->n_boundary_edges() == 0;
    out.psi = VertexField(mesh);
    out.psi.v = solve_stiffness(Kv, Wv, rhs_v, vertex_singular, tol, &out.psi_stats);

    CellField d = div(u);
    CsrMatrix Kc = stiffness_cell(ops);
    std::vector<double> Wc = weights_cell(*mesh);
    std::vector<double> rhs_c(d.size());
    for (int i = 0; i < d.size(); ++i) rhs_c[i] = -0.5 * d.v[i];
    out.phi = CellField(mesh);
    out.phi.v = solve_stiffness(Kc, Wc, rhs_c, /*singular=*/true, tol, &out.phi_stats);
    shift_to_zero_mean(out.phi);

    if (!out.psi_stats.converged || !out.phi_stats.converged)
        throw std::runtime_error("helmholtz_decompose: CG did not converge (residuals " +
                                 std::to_string(out.psi_stats.rel_residual) + ", " +
                                 std::to_string(out.phi_stats.rel_residual) + ")");
    return out;
}

EdgeField reconstruct_from_curl_div(const VertexField& omega, const CellField& delta,
                                    double tol, SolveStats* psi_stats, SolveStats* phi_stats) {
    require_same_mesh(omega.mesh->token, delta.mesh->token, "reconstruct_from_curl_div");
    const MeshPtr& mesh = omega.mesh;

    double integral = 0.0, scale = 0.0;
    for (int i = 0; i < delta.size(); ++i) {
        integral += mesh->cells[i].area * delta.v[i];
        scale += mesh->cells[i].area * std::abs(delta.v[i]);
    }
    if (std::abs(integral) > 1e-12 * (1.0 + scale)) {
        std::ostringstream os;
        os << "reconstruct_from_curl_div: divergence datum has nonzero integral " << integral;
        throw std::invalid_argument(os.str());
    }

    Operators ops(mesh);
    CsrMatrix Kv = stiffness_vertex(ops);
    CsrMatrix Kc = stiffness_cell(ops);
    std::vector<double> Wv = weights_vertex(*mesh), Wc = weights_cell(*mesh);

    std::vector<double> rhs_v(omega.size());
    for (int i = 0; i < omega.size(); ++i) rhs_v[i] = -0.5 * omega.v[i];
    SolveStats st_v, st_c;
    VertexField psi(mesh);
    psi.v = solve_stiffness(Kv, Wv, rhs_v, mesh->n_boundary_edges() == 0, tol, &st_v);

    std::vector<double> rhs_c(delta.size());
    for (int i = 0; i < delta.size(); ++i) rhs_c[i] = -0.5 * delta.v[i];
    CellField phi(mesh);
    phi.v = solve_stiffness(Kc, Wc, rhs_c, true, tol, &st_c);

    if (psi_stats) *psi_stats = st_v;
    if (phi_stats) *phi_stats = st_c;
    if (!st_v.converged || !st_c.converged)
        throw std::runtime_error("reconstruct_from_curl_div: CG did not converge");

    EdgeField u = skew_grad(psi);
    EdgeField gp = grad(phi);
    for (int e = 0; e < u.size(); ++e) u.v[e] += gp.v[e];
    return u;
}

VertexField integrate_stream(const EdgeField& u) {
    const StaggeredMesh& m = *u.mesh;
    const double cycle_tol = 1e-11 * (1.0 + norm_l2(u));

    VertexField psi(u.mesh);
    std::vector<char> known(m.n_verts(), 0);
    std::queue<int> frontier;

    // pre-check the divergence componentwise
    CellField d = div(u);
    double dscale = 1e-11 * (1.0 + norm_l2(u) / std::max(m.h, 1e-300));
    for (int i = 0; i < d.size(); ++i)
        if (std::abs(d.v[i]) > dscale) {
            std::ostringstream os;
            os << "integrate_stream: input has nonzero divergence " << d.v[i] << " on cell " << i;
            throw std::invalid_argument(os.str());
        }

    psi.v[0] = 0.0;
    known[0] = 1;
    frontier.push(0);
    while (!frontier.empty()) {
        int nu = frontier.front();
        frontier.pop();
        for (const int* pe = m.edges_of_vert.begin(nu); pe != m.edges_of_vert.end(nu); ++pe) {
            const EdgePair& ep = m.edges[*pe];
            if (ep.n_verts != 2) continue;
            int k_here = ep.vert[0] == nu ? 0 : 1;
            int other = ep.vert[1 - k_here];
            double target = u.v[*pe] * ep.flux_len();  // Eq. 61 with the effective length
            if (!known[other]) {
                psi.v[other] =
                    (target - ep.vert_sign[k_here] * psi.v[nu]) * ep.vert_sign[1 - k_here];
                known[other] = 1;
                frontier.push(other);
            } else {
                double got = ep.vert_sign[0] * psi.v[ep.vert[0]] +
                             ep.vert_sign[1] * psi.v[ep.vert[1]];
                if (std::abs(got - target) > cycle_tol) {
                    std::ostringstream os;
                    os << "integrate_stream: cycle residual " << (got - target) << " on edge "
                       << *pe << " exceeds " << cycle_tol
                       << " (input is not discretely divergence-free)";
                    throw std::runtime_error(os.str());
                }
            }
        }
    }
    for (int nu = 0; nu < m.n_verts(); ++nu)
        if (!known[nu]) throw std::runtime_error("integrate_stream: dual graph is disconnected");

    // boundary pairs carry the absolute relation psi_nu * t = u * flux;
    // re-pin the additive constant from the first one and verify the rest
    bool pinned = false;
    double shift = 0.0;
    for (int e = m.n_interior_edges; e < m.n_edges_total(); ++e) {
        const EdgePair& ep = m.edges[e];
        double want = u.v[e] * ep.flux_len() * ep.vert_sign[0];  // psi at the single dual
        if (!pinned) {
            shift = want - psi.v[ep.vert[0]];
            pinned = true;
        } else if (std::abs(psi.v[ep.vert[0]] + shift - want) > cycle_tol) {
            std::ostringstream os;
            os << "integrate_stream: boundary relation mismatch "
               << (psi.v[ep.vert[0]] + shift - want) << " on edge " << e;
            throw std::runtime_error(os.str());
        }
    }
    if (pinned)
        for (double& x : psi.v) x += shift;
    return psi;
}

namespace {

CellField integrate_potential_impl(const EdgeField& u, bool interior_only) {
    const StaggeredMesh& m = *u.mesh;
    const double cycle_tol = 1e-11 * (1.0 + norm_l2(u));
    const int n_edges = interior_only ? m.n_interior_edges : m.n_edges_total();

    CellField phi(u.mesh);
    std::vector<char> known(m.n_cells_total(), 0);
    std::queue<int> frontier;
    phi.v[0] = 0.0;
    known[0] = 1;
    frontier.push(0);
    auto relax = [&](bool& progressed) {
        while (!frontier.empty()) {
            int i = frontier.front();
            frontier.pop();
            for (const int* pe = m.edges_of_cell.begin(i); pe != m.edges_of_cell.end(i); ++pe) {
                if (*pe >= n_edges) continue;
                const EdgePair& ep = m.edges[*pe];
                if (ep.n_cells != 2) continue;
                int k_here = ep.cell[0] == i ? 0 : 1;
                int other = ep.cell[1 - k_here];
                double target = -u.v[*pe] * ep.dual_len;  // Eq. 64
                if (!known[other]) {
                    phi.v[other] =
                        (target - ep.cell_sign[k_here] * phi.v[i]) * ep.cell_sign[1 - k_here];
                    known[other] = 1;
                    progressed = true;
                    frontier.push(other);
                } else {
                    double got = ep.cell_sign[0] * phi.v[ep.cell[0]] +
                                 ep.cell_sign[1] * phi.v[ep.cell[1]];
                    if (std::abs(got - target) > cycle_tol) {
                        std::ostringstream os;
                        os << "integrate_potential: circulation residual " << (got - target)
                           << " on edge " << *pe << " exceeds " << cycle_tol;
                        throw std::runtime_error(os.str());
                    }
                }
            }
        }
    };
    bool progressed = true;
    relax(progressed);

    // cells unreachable through the allowed edges (corner cells when
    // restricted to interior edges): fill from any incident edge relation
    for (int pass = 0; pass < m.n_cells_total(); ++pass) {
        bool changed = false;
        for (int i = 0; i < m.n_cells_total(); ++i) {
            if (known[i]) continue;
            for (const int* pe = m.edges_of_cell.begin(i); pe != m.edges_of_cell.end(i); ++pe) {
                const EdgePair& ep = m.edges[*pe];
                if (ep.n_cells != 2) continue;
                int k_here = ep.cell[0] == i ? 0 : 1;
                int other = ep.cell[1 - k_here];
                if (!known[other]) continue;
                double target = -u.v[*pe] * ep.dual_len;
                phi.v[i] = (target - ep.cell_sign[1 - k_here] * phi.v[other]) *
                           ep.cell_sign[k_here];
                known[i] = 1;
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }
    for (int i = 0; i < m.n_cells_total(); ++i)
        if (!known[i]) throw std::runtime_error("integrate_potential: cell graph disconnected");

    shift_to_zero_mean(phi);
    return phi;
}

} // namespace

CellField integrate_potential(const EdgeField& u) {
    const VertexField w = curl(u);
    double scale = 1e-11 * (1.0 + norm_l2(u) / std::max(u.mesh->h, 1e-300));
    for (int i = 0; i < w.size(); ++i)
        if (std::abs(w.v[i]) > scale) {
            std::ostringstream os;
            os << "integrate_potential: input has nonzero curl " << w.v[i] << " at dual cell "
               << i;
            throw std::invalid_argument(os.str());
        }
    return integrate_potential_impl(u, /*interior_only=*/false);
}

CellField integrate_potential_interior(const EdgeField& g) {
    return integrate_potential_impl(g, /*interior_only=*/true);
}

double poincare_constant(SpaceKind kind, const MeshPtr& mesh) {
    Operators ops(mesh);
    CsrMatrix K;
    std::vector<double> W;
    bool singular = false;
    switch (kind) {
        case SpaceKind::Cell:
            K = stiffness_cell(ops);
            W = weights_cell(*mesh);
            singular = true;  // constants; the admissible subspace is zero-mean
            break;
        case SpaceKind::Vertex:
            K = stiffness_vertex(ops);
            W = weights_vertex(*mesh);
            singular = mesh->n_boundary_edges() == 0;
            break;
        case SpaceKind::Edge: {
            // K_E = D^T W_c D + C^T W_v C assembled from the operator matrices
            const CsrMatrix& D = ops.div_matrix();
            const CsrMatrix& C = ops.curl_matrix();
            std::vector<Triplet> t;
            auto add_normal_eq = [&](const CsrMatrix& A, const std::vector<double>& diag) {
                for (int r = 0; r < A.rows; ++r)
                    for (int k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
                        for (int j = A.row_ptr[r]; j < A.row_ptr[r + 1]; ++j)
                            t.push_back({A.col_idx[k], A.col_idx[j],
                                         diag[r] * A.values[k] * A.values[j]});
            };
            add_normal_eq(D, weights_cell(*mesh));
            add_normal_eq(C, weights_vertex(*mesh));
            K = csr_from_triplets(mesh->n_edges_total(), mesh->n_edges_total(), std::move(t));
            W.resize(mesh->n_edges_total());
            for (int e = 0; e < mesh->n_edges_total(); ++e) W[e] = mesh->edges[e].area;
            break;
        }
    }

    const int n = K.rows;
    // deterministic start vector
    std::vector<double> x(n);
    unsigned long long s = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < n; ++i) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        x[i] = static_cast<double>((s >> 11) % 100000) / 100000.0 - 0.5;
    }
    auto w_project = [&](std::vector<double>& v) {
        if (!singular && kind != SpaceKind::Cell) return;
        // remove the W-weighted mean (the |.|_1h kernel direction)
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += W[i] * v[i];
            den += W[i];
        }
        for (int i = 0; i < n; ++i) v[i] -= num / den;
    };
    w_project(x);

    double rho_prev = 0.0;
    std::vector<double> history;
    for (int it = 0; it < 500; ++it) {
        // y = K^{-1} W x
        SparseSystem sys;
        sys.n = n;
        sys.apply = [&K](const std::vector<double>& a, std::vector<double>& b) {
            b = K.apply(a);
        };
        sys.rhs.resize(n);
        for (int i = 0; i < n; ++i) sys.rhs[i] = W[i] * x[i];
        sys.jacobi = K.diagonal();
        if (singular || kind == SpaceKind::Cell) sys.constraint.assign(n, 1.0);
        sys.tol = 1e-10;
        SolveStats st;
        std::vector<double> y = solve_cg(sys, &st);
        if (!st.converged)
            throw std::runtime_error("poincare_constant: inner CG stalled at residual " +
                                     std::to_string(st.rel_residual));
        w_project(y);

        double num = 0.0;
        auto Ky = K.apply(y);
        double den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += W[i] * y[i] * y[i];
            den += y[i] * Ky[i];
        }
        double rho = num / den;
        history.push_back(rho);
        double nrm = std::sqrt(num);
        for (int i = 0; i < n; ++i) x[i] = y[i] / nrm;
        if (it > 2 && std::abs(rho - rho_prev) <= 1e-6 * std::abs(rho)) return std::sqrt(rho);
        rho_prev = rho;
    }
    std::ostringstream os;
    os << "poincare_constant: power iteration stagnated; last ratios";
    for (std::size_t i = history.size() > 5 ? history.size() - 5 : 0; i < history.size(); ++i)
        os << " " << history[i];
    throw std::runtime_error(os.str());
}

} // namespace stagvc
