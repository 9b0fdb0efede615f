#include "stagvc/stagvc.h"

#include "core/approximation.hpp"
#include "core/polygon.hpp"
#include "core/stokes.hpp"

#include <cstdio>
#include <cstring>
#include <string>

using namespace stagvc;

struct svc_mesh {
    MeshPtr mesh;
};

// One coefficient vector plus its space tag; data() stays stable.
struct svc_field {
    MeshPtr mesh;
    svc_space space;
    std::vector<double> v;
};

namespace {

thread_local std::string g_last_error;

svc_status fail(svc_status code, const char* what) {
    g_last_error = what;
    return code;
}

svc_status fail(svc_status code, const std::exception& e) {
    g_last_error = e.what();
    return code;
}

template <typename F>
svc_status guarded(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        return fail(SVC_ERR_INVALID_ARG, e);
    } catch (const std::exception& e) {
        return fail(SVC_ERR_INTERNAL, e);
    }
}

int space_size(const MeshPtr& m, svc_space s) {
    switch (s) {
        case SVC_SPACE_CELL: return m->n_cells_total();
        case SVC_SPACE_VERTEX: return m->n_verts();
        default: return m->n_edges_total();
    }
}

CellField as_cell(const svc_field* f) {
    CellField c(f->mesh);
    c.v = f->v;
    return c;
}
VertexField as_vertex(const svc_field* f) {
    VertexField c(f->mesh);
    c.v = f->v;
    return c;
}
EdgeField as_edge(const svc_field* f) {
    EdgeField c(f->mesh);
    c.v = f->v;
    return c;
}

bool check(const svc_field* f, svc_space want, const char* what) {
    if (!f || f->space != want) {
        g_last_error = std::string(what) + ": field of the wrong space";
        return false;
    }
    return true;
}

ScalarFn2 wrap(svc_scalar_fn f, void* ctx) {
    return [f, ctx](double x, double y) { return f(x, y, ctx); };
}

void copy_stats(const SolveStats& s, svc_solve_stats* out) {
    if (!out) return;
    out->iterations = s.iterations;
    out->rel_residual = s.rel_residual;
    out->converged = s.converged ? 1 : 0;
}

svc_field* make_field(const MeshPtr& m, svc_space s, std::vector<double> v) {
    return new svc_field{m, s, std::move(v)};
}

} // namespace

extern "C" {

const char* svc_last_error(void) { return g_last_error.c_str(); }

svc_status svc_mesh_quad(int nx, int ny, double x0, double y0, double x1, double y1,
                         svc_mesh** out) {
    return guarded([&] {
        *out = new svc_mesh{build_quad_mesh(nx, ny, {x0, y0}, {x1, y1})};
        return SVC_OK;
    });
}

svc_status svc_mesh_trihex(int refinement, svc_mesh** out) {
    return guarded([&] {
        *out = new svc_mesh{build_tri_hex_mesh(refinement)};
        return SVC_OK;
    });
}

svc_status svc_mesh_voronoi(int seed_count, int lloyd_iters, unsigned long long rng_seed,
                            svc_mesh** out) {
    return guarded([&] {
        std::vector<Vec2> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        *out = new svc_mesh{build_voronoi_mesh(seed_count, square, lloyd_iters, rng_seed)};
        return SVC_OK;
    });
}

svc_status svc_mesh_read(const char* path, svc_mesh** out) {
    try {
        *out = new svc_mesh{read_mesh(path)};
        return SVC_OK;
    } catch (const std::exception& e) {
        return fail(SVC_ERR_IO, e);
    }
}

svc_status svc_mesh_write(const svc_mesh* mesh, const char* path) {
    try {
        write_mesh(*mesh->mesh, path);
        return SVC_OK;
    } catch (const std::exception& e) {
        return fail(SVC_ERR_IO, e);
    }
}

void svc_mesh_free(svc_mesh* mesh) { delete mesh; }

svc_status svc_mesh_counts(const svc_mesh* mesh, int* nc, int* ncb, int* nv, int* ne, int* neb) {
    if (!mesh) return fail(SVC_ERR_INVALID_ARG, "svc_mesh_counts: null mesh");
    if (nc) *nc = mesh->mesh->n_interior_cells;
    if (ncb) *ncb = mesh->mesh->n_boundary_cells();
    if (nv) *nv = mesh->mesh->n_verts();
    if (ne) *ne = mesh->mesh->n_interior_edges;
    if (neb) *neb = mesh->mesh->n_boundary_edges();
    return SVC_OK;
}

double svc_mesh_h(const svc_mesh* mesh) { return mesh ? mesh->mesh->h : 0.0; }

svc_status svc_mesh_validate(const svc_mesh* mesh, svc_validation* out) {
    return guarded([&] {
        ValidationReport r = validate(*mesh->mesh);
        out->euler_residual = r.euler_residual;
        out->max_orthogonality_defect = r.max_orthogonality_defect;
        out->nonconvex_diamonds = r.nonconvex_diamonds;
        out->m_realized = r.m_realized;
        out->big_m_realized = r.big_m_realized;
        out->max_bisection_defect = r.max_bisection_defect;
        out->bisection_defect_over_h2 = r.bisection_defect_over_h2;
        out->connectivity_ok = r.connectivity_ok ? 1 : 0;
        out->indicators_ok = r.indicators_ok ? 1 : 0;
        out->primary_area_sum = r.primary_area_sum;
        out->dual_area_sum = r.dual_area_sum;
        out->area_mismatch_rel = r.area_mismatch_rel;
        out->domain_area_rel_err = r.domain_area_rel_err;
        out->ok = r.ok() ? 1 : 0;
        std::string issue = !r.connectivity_ok ? r.first_connectivity_issue
                            : !r.indicators_ok ? r.first_indicator_issue
                                               : "";
        std::snprintf(out->first_issue, sizeof out->first_issue, "%s", issue.c_str());
        return SVC_OK;
    });
}

svc_status svc_field_create(const svc_mesh* mesh, svc_space space, svc_field** out) {
    if (!mesh) return fail(SVC_ERR_INVALID_ARG, "svc_field_create: null mesh");
    *out = make_field(mesh->mesh, space,
                      std::vector<double>(space_size(mesh->mesh, space), 0.0));
    return SVC_OK;
}

void svc_field_free(svc_field* field) { delete field; }

int svc_field_size(const svc_field* field) {
    return field ? static_cast<int>(field->v.size()) : 0;
}

double* svc_field_data(svc_field* field) { return field ? field->v.data() : nullptr; }
const double* svc_field_data_const(const svc_field* field) {
    return field ? field->v.data() : nullptr;
}

svc_status svc_field_norm(const svc_field* field, double* out) {
    return guarded([&] {
        switch (field->space) {
            case SVC_SPACE_CELL: *out = norm_l2(as_cell(field)); break;
            case SVC_SPACE_VERTEX: *out = norm_l2(as_vertex(field)); break;
            default: *out = norm_l2(as_edge(field)); break;
        }
        return SVC_OK;
    });
}

svc_status svc_field_inner(const svc_field* a, const svc_field* b, double* out) {
    if (!a || !b || a->space != b->space)
        return fail(SVC_ERR_INVALID_ARG, "svc_field_inner: mismatched fields");
    return guarded([&] {
        switch (a->space) {
            case SVC_SPACE_CELL: *out = inner(as_cell(a), as_cell(b)); break;
            case SVC_SPACE_VERTEX: *out = inner(as_vertex(a), as_vertex(b)); break;
            default: *out = inner(as_edge(a), as_edge(b)); break;
        }
        return SVC_OK;
    });
}

svc_status svc_field_semi_h1(const svc_field* edge_field, double* out) {
    if (!check(edge_field, SVC_SPACE_EDGE, "svc_field_semi_h1")) return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        *out = semi_h1(as_edge(edge_field));
        return SVC_OK;
    });
}

svc_status svc_field_write_csv(const svc_field* field, const char* path, const char* mesh_ref) {
    try {
        const char* kind = field->space == SVC_SPACE_CELL     ? "cell"
                           : field->space == SVC_SPACE_VERTEX ? "vertex"
                                                              : "edge";
        write_field_csv(path, kind, field->v, mesh_ref ? mesh_ref : "");
        return SVC_OK;
    } catch (const std::exception& e) {
        return fail(SVC_ERR_IO, e);
    }
}

svc_status svc_op_grad(const svc_field* cell, svc_field* edge_out) {
    if (!check(cell, SVC_SPACE_CELL, "svc_op_grad") ||
        !check(edge_out, SVC_SPACE_EDGE, "svc_op_grad"))
        return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        edge_out->v = grad(as_cell(cell)).v;
        return SVC_OK;
    });
}

svc_status svc_op_skew_grad(const svc_field* vertex, svc_field* edge_out) {
    if (!check(vertex, SVC_SPACE_VERTEX, "svc_op_skew_grad") ||
        !check(edge_out, SVC_SPACE_EDGE, "svc_op_skew_grad"))
        return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        edge_out->v = skew_grad(as_vertex(vertex)).v;
        return SVC_OK;
    });
}

svc_status svc_op_div(const svc_field* edge, svc_field* cell_out) {
    if (!check(edge, SVC_SPACE_EDGE, "svc_op_div") ||
        !check(cell_out, SVC_SPACE_CELL, "svc_op_div"))
        return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        cell_out->v = div(as_edge(edge)).v;
        return SVC_OK;
    });
}

svc_status svc_op_curl(const svc_field* edge, svc_field* vertex_out) {
    if (!check(edge, SVC_SPACE_EDGE, "svc_op_curl") ||
        !check(vertex_out, SVC_SPACE_VERTEX, "svc_op_curl"))
        return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        vertex_out->v = curl(as_edge(edge)).v;
        return SVC_OK;
    });
}

svc_status svc_op_laplacian_cell(const svc_field* cell, svc_field* cell_out) {
    if (!check(cell, SVC_SPACE_CELL, "svc_op_laplacian_cell") ||
        !check(cell_out, SVC_SPACE_CELL, "svc_op_laplacian_cell"))
        return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        cell_out->v = laplacian_cell(as_cell(cell)).v;
        return SVC_OK;
    });
}

svc_status svc_op_laplacian_vertex(const svc_field* vertex, svc_field* vertex_out) {
    if (!check(vertex, SVC_SPACE_VERTEX, "svc_op_laplacian_vertex") ||
        !check(vertex_out, SVC_SPACE_VERTEX, "svc_op_laplacian_vertex"))
        return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        vertex_out->v = laplacian_vertex(as_vertex(vertex)).v;
        return SVC_OK;
    });
}

svc_status svc_helmholtz_decompose(const svc_field* edge, double tol, svc_field* psi_out,
                                   svc_field* phi_out, svc_solve_stats* stats) {
    if (!check(edge, SVC_SPACE_EDGE, "svc_helmholtz_decompose") ||
        !check(psi_out, SVC_SPACE_VERTEX, "svc_helmholtz_decompose") ||
        !check(phi_out, SVC_SPACE_CELL, "svc_helmholtz_decompose"))
        return SVC_ERR_INVALID_ARG;
    try {
        HelmholtzParts parts = helmholtz_decompose(as_edge(edge), tol);
        psi_out->v = parts.psi.v;
        phi_out->v = parts.phi.v;
        copy_stats(parts.psi_stats, stats);
        return SVC_OK;
    } catch (const std::invalid_argument& e) {
        return fail(SVC_ERR_INVALID_ARG, e);
    } catch (const std::exception& e) {
        return fail(SVC_ERR_SOLVER, e);
    }
}

svc_status svc_reconstruct_from_curl_div(const svc_field* omega_vertex,
                                         const svc_field* delta_cell, double tol,
                                         svc_field* edge_out, svc_solve_stats* stats) {
    if (!check(omega_vertex, SVC_SPACE_VERTEX, "svc_reconstruct_from_curl_div") ||
        !check(delta_cell, SVC_SPACE_CELL, "svc_reconstruct_from_curl_div") ||
        !check(edge_out, SVC_SPACE_EDGE, "svc_reconstruct_from_curl_div"))
        return SVC_ERR_INVALID_ARG;
    try {
        SolveStats st;
        edge_out->v =
            reconstruct_from_curl_div(as_vertex(omega_vertex), as_cell(delta_cell), tol, &st).v;
        copy_stats(st, stats);
        return SVC_OK;
    } catch (const std::invalid_argument& e) {
        return fail(SVC_ERR_PRECONDITION, e);
    } catch (const std::exception& e) {
        return fail(SVC_ERR_SOLVER, e);
    }
}

svc_status svc_integrate_stream(const svc_field* edge, svc_field* vertex_out) {
    if (!check(edge, SVC_SPACE_EDGE, "svc_integrate_stream") ||
        !check(vertex_out, SVC_SPACE_VERTEX, "svc_integrate_stream"))
        return SVC_ERR_INVALID_ARG;
    try {
        vertex_out->v = integrate_stream(as_edge(edge)).v;
        return SVC_OK;
    } catch (const std::exception& e) {
        return fail(SVC_ERR_PRECONDITION, e);
    }
}

svc_status svc_integrate_potential(const svc_field* edge, svc_field* cell_out) {
    if (!check(edge, SVC_SPACE_EDGE, "svc_integrate_potential") ||
        !check(cell_out, SVC_SPACE_CELL, "svc_integrate_potential"))
        return SVC_ERR_INVALID_ARG;
    try {
        cell_out->v = integrate_potential(as_edge(edge)).v;
        return SVC_OK;
    } catch (const std::exception& e) {
        return fail(SVC_ERR_PRECONDITION, e);
    }
}

svc_status svc_poincare_constant(const svc_mesh* mesh, svc_space space, double* out) {
    return guarded([&] {
        SpaceKind k = space == SVC_SPACE_CELL     ? SpaceKind::Cell
                      : space == SVC_SPACE_VERTEX ? SpaceKind::Vertex
                                                  : SpaceKind::Edge;
        *out = poincare_constant(k, mesh->mesh);
        return SVC_OK;
    });
}

svc_status svc_restrict_general(const svc_mesh* mesh, svc_scalar_fn omega, svc_scalar_fn delta,
                                void* ctx, double tol, svc_field* edge_out) {
    if (!check(edge_out, SVC_SPACE_EDGE, "svc_restrict_general")) return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        SmoothVectorField u;
        u.omega = wrap(omega, ctx);
        u.delta = wrap(delta, ctx);
        edge_out->v = restrict_general(u, mesh->mesh, tol).v;
        return SVC_OK;
    });
}

svc_status svc_restrict_stokes(const svc_mesh* mesh, svc_scalar_fn psi, void* ctx,
                               svc_field* edge_out) {
    if (!check(edge_out, SVC_SPACE_EDGE, "svc_restrict_stokes")) return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        SmoothVectorField u;
        u.psi = wrap(psi, ctx);
        edge_out->v = restrict_stokes(u, mesh->mesh).v;
        return SVC_OK;
    });
}

svc_status svc_restrict_by_edge_averaging(const svc_mesh* mesh, svc_scalar_fn ux,
                                          svc_scalar_fn uy, void* ctx, svc_edge_average choice,
                                          svc_field* edge_out) {
    if (!check(edge_out, SVC_SPACE_EDGE, "svc_restrict_by_edge_averaging"))
        return SVC_ERR_INVALID_ARG;
    return guarded([&] {
        SmoothVectorField u;
        u.ux = wrap(ux, ctx);
        u.uy = wrap(uy, ctx);
        EdgeAverage c = choice == SVC_AVG_DUAL_EDGE      ? EdgeAverage::DualEdge
                        : choice == SVC_AVG_PRIMARY_EDGE ? EdgeAverage::PrimaryEdge
                                                         : EdgeAverage::PrimaryFirstThird;
        edge_out->v = restrict_by_edge_averaging(u, mesh->mesh, c).v;
        return SVC_OK;
    });
}

svc_status svc_c1_error_general(const svc_mesh* mesh, svc_scalar_fn omega, svc_scalar_fn delta,
                                void* ctx, double tol, double* out) {
    return guarded([&] {
        SmoothVectorField u;
        u.omega = wrap(omega, ctx);
        u.delta = wrap(delta, ctx);
        *out = c1_error(u, ApproxVariant::General, mesh->mesh, tol);
        return SVC_OK;
    });
}

svc_status svc_c1_error_stokes(const svc_mesh* mesh, svc_scalar_fn psi, svc_scalar_fn omega,
                               void* ctx, double* out) {
    return guarded([&] {
        SmoothVectorField u;
        u.psi = wrap(psi, ctx);
        u.omega = wrap(omega, ctx);
        *out = c1_error(u, ApproxVariant::Stokes, mesh->mesh);
        return SVC_OK;
    });
}

svc_status svc_error_l2(const svc_field* field, svc_scalar_fn f, void* ctx, double* out) {
    return guarded([&] {
        const MeshPtr& m = field->mesh;
        if (!m->has_polygons())
            throw std::invalid_argument("svc_error_l2: mesh carries no polygons");
        if (field->space == SVC_SPACE_EDGE)
            throw std::invalid_argument("svc_error_l2: edge fields are not supported");
        double s = 0.0;
        const auto& polys = field->space == SVC_SPACE_CELL ? m->cell_polygons : m->dual_polygons;
        for (std::size_t i = 0; i < field->v.size(); ++i) {
            double fv = field->v[i];
            s += polygon_integral(polys[i], [&](Vec2 p) {
                double d = fv - f(p.x, p.y, ctx);
                return d * d;
            });
        }
        *out = std::sqrt(s);
        return SVC_OK;
    });
}

svc_status svc_stokes_solve(const svc_mesh* mesh, svc_scalar_fn psi_f, svc_scalar_fn phi_f,
                            void* ctx, double tol, svc_stokes_result* out) {
    try {
        StokesForcing f = discretize_forcing(wrap(psi_f, ctx), wrap(phi_f, ctx), mesh->mesh);
        StokesSolution sol = solve_stokes(f, mesh->mesh, tol);
        recover_pressure(sol, f);
        out->u = make_field(mesh->mesh, SVC_SPACE_EDGE, std::move(sol.u.v));
        out->psi = make_field(mesh->mesh, SVC_SPACE_VERTEX, std::move(sol.psi.v));
        out->p = make_field(mesh->mesh, SVC_SPACE_CELL, std::move(sol.p.v));
        copy_stats(sol.stats, &out->stats);
        out->energy_lhs = sol.energy_lhs;
        out->energy_rhs = sol.energy_rhs;
        out->div_max = sol.div_max;
        out->eq_residual = sol.eq_residual;
        return SVC_OK;
    } catch (const std::invalid_argument& e) {
        return fail(SVC_ERR_INVALID_ARG, e);
    } catch (const std::exception& e) {
        return fail(SVC_ERR_SOLVER, e);
    }
}

} // extern "C"
