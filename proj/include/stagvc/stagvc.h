/* stagvc: staggered-grid discrete vector calculus on unstructured
 * orthogonal primal/dual meshes, with the MAC scheme for the
 * incompressible Stokes problem in vorticity form.
 *
 * C API of the shared library. All objects are opaque handles owned by the
 * caller and released with the matching *_free function. Functions return
 * SVC_OK or an error code; svc_last_error() describes the most recent
 * failure on the calling thread.
 */
#ifndef STAGVC_H
#define STAGVC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct svc_mesh svc_mesh;
typedef struct svc_field svc_field;

typedef enum svc_status {
    SVC_OK = 0,
    SVC_ERR_INVALID_ARG = 1,
    SVC_ERR_IO = 2,
    SVC_ERR_SOLVER = 3,
    SVC_ERR_PRECONDITION = 4,
    SVC_ERR_INTERNAL = 5
} svc_status;

typedef enum svc_space {
    SVC_SPACE_CELL = 0,   /* scalars on primary cells */
    SVC_SPACE_VERTEX = 1, /* scalars on dual cells */
    SVC_SPACE_EDGE = 2    /* normal components on edge pairs */
} svc_space;

/* Message for the last error on this thread; empty string if none. */
const char* svc_last_error(void);

/* ---- meshes ------------------------------------------------------------ */

svc_status svc_mesh_quad(int nx, int ny, double x0, double y0, double x1, double y1,
                         svc_mesh** out);
svc_status svc_mesh_trihex(int refinement, svc_mesh** out);
/* Unit-square domain; seed_count interior seeds, deterministic in rng_seed. */
svc_status svc_mesh_voronoi(int seed_count, int lloyd_iters, unsigned long long rng_seed,
                            svc_mesh** out);
svc_status svc_mesh_read(const char* path, svc_mesh** out);
svc_status svc_mesh_write(const svc_mesh* mesh, const char* path);
void svc_mesh_free(svc_mesh* mesh);

svc_status svc_mesh_counts(const svc_mesh* mesh, int* nc, int* ncb, int* nv, int* ne, int* neb);
double svc_mesh_h(const svc_mesh* mesh);

typedef struct svc_validation {
    long long euler_residual;
    double max_orthogonality_defect;
    int nonconvex_diamonds;
    double m_realized;
    double big_m_realized;
    double max_bisection_defect;
    double bisection_defect_over_h2;
    int connectivity_ok;
    int indicators_ok;
    double primary_area_sum;
    double dual_area_sum;
    double area_mismatch_rel;
    double domain_area_rel_err;
    int ok;
    char first_issue[256];
} svc_validation;

svc_status svc_mesh_validate(const svc_mesh* mesh, svc_validation* out);

/* ---- fields ------------------------------------------------------------ */

svc_status svc_field_create(const svc_mesh* mesh, svc_space space, svc_field** out);
void svc_field_free(svc_field* field);
int svc_field_size(const svc_field* field);
/* Mutable view of the coefficients (length svc_field_size). */
double* svc_field_data(svc_field* field);
const double* svc_field_data_const(const svc_field* field);

svc_status svc_field_norm(const svc_field* field, double* out);
svc_status svc_field_inner(const svc_field* a, const svc_field* b, double* out);
svc_status svc_field_semi_h1(const svc_field* edge_field, double* out);
svc_status svc_field_write_csv(const svc_field* field, const char* path, const char* mesh_ref);

/* ---- discrete operators ------------------------------------------------ */

svc_status svc_op_grad(const svc_field* cell, svc_field* edge_out);
svc_status svc_op_skew_grad(const svc_field* vertex, svc_field* edge_out);
svc_status svc_op_div(const svc_field* edge, svc_field* cell_out);
svc_status svc_op_curl(const svc_field* edge, svc_field* vertex_out);
svc_status svc_op_laplacian_cell(const svc_field* cell, svc_field* cell_out);
svc_status svc_op_laplacian_vertex(const svc_field* vertex, svc_field* vertex_out);

/* ---- Helmholtz machinery ------------------------------------------------ */

typedef struct svc_solve_stats {
    int iterations;
    double rel_residual;
    int converged;
} svc_solve_stats;

svc_status svc_helmholtz_decompose(const svc_field* edge, double tol, svc_field* psi_out,
                                   svc_field* phi_out, svc_solve_stats* stats);
svc_status svc_reconstruct_from_curl_div(const svc_field* omega_vertex,
                                         const svc_field* delta_cell, double tol,
                                         svc_field* edge_out, svc_solve_stats* stats);
svc_status svc_integrate_stream(const svc_field* edge, svc_field* vertex_out);
svc_status svc_integrate_potential(const svc_field* edge, svc_field* cell_out);
svc_status svc_poincare_constant(const svc_mesh* mesh, svc_space space, double* out);

/* ---- external approximation --------------------------------------------- */

typedef double (*svc_scalar_fn)(double x, double y, void* ctx);

/* General space: omega point-sampled at dual centers, delta cell-averaged,
 * edge field reconstructed from the curl/div system. */
svc_status svc_restrict_general(const svc_mesh* mesh, svc_scalar_fn omega, svc_scalar_fn delta,
                                void* ctx, double tol, svc_field* edge_out);
/* Divergence-free space: stream sampled at interior duals, zero on
 * boundary duals, then the skewed gradient. */
svc_status svc_restrict_stokes(const svc_mesh* mesh, svc_scalar_fn psi, void* ctx,
                               svc_field* edge_out);

typedef enum svc_edge_average {
    SVC_AVG_DUAL_EDGE = 0,
    SVC_AVG_PRIMARY_EDGE = 1,
    SVC_AVG_PRIMARY_FIRST_THIRD = 2
} svc_edge_average;

svc_status svc_restrict_by_edge_averaging(const svc_mesh* mesh, svc_scalar_fn ux,
                                          svc_scalar_fn uy, void* ctx, svc_edge_average choice,
                                          svc_field* edge_out);

/* ||P_h R_h u - Pi u||_F against quadrature projections of the analytic
 * components. General variant needs omega and delta; the divergence-free
 * variant needs psi and omega. */
svc_status svc_c1_error_general(const svc_mesh* mesh, svc_scalar_fn omega, svc_scalar_fn delta,
                                void* ctx, double tol, double* out);
svc_status svc_c1_error_stokes(const svc_mesh* mesh, svc_scalar_fn psi, svc_scalar_fn omega,
                               void* ctx, double* out);

/* L2 distance between a discrete field and an analytic function, by
 * polygon quadrature over the matching cells. */
svc_status svc_error_l2(const svc_field* field, svc_scalar_fn f, void* ctx, double* out);

/* ---- Stokes ------------------------------------------------------------- */

typedef struct svc_stokes_result {
    svc_field* u;    /* edge field, divergence-free, zero on boundary edges */
    svc_field* psi;  /* stream representation, zero on boundary duals */
    svc_field* p;    /* pressure, zero area-weighted mean */
    svc_solve_stats stats;
    double energy_lhs;   /* |u|_1h */
    double energy_rhs;   /* |psi_f_h|_0h */
    double div_max;      /* componentwise divergence */
    double eq_residual;  /* momentum residual on interior edges */
} svc_stokes_result;

/* Solves the vorticity-form MAC scheme with forcing given through its
 * stream/potential split, then recovers the pressure. The caller frees the
 * three fields. */
svc_status svc_stokes_solve(const svc_mesh* mesh, svc_scalar_fn psi_f, svc_scalar_fn phi_f,
                            void* ctx, double tol, svc_stokes_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STAGVC_H */
