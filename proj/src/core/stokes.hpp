#pragma once

#include "approximation.hpp"

#include <string>

namespace stagvc {

/// Forcing discretized through its stream/potential split
/// f = perp-grad(psi_f) + grad(phi_f): both scalars cell-averaged, then
/// f_h = skew_grad(psi_f_h) + grad(phi_f_h).
struct StokesForcing {
    VertexField psi_f;
    CellField phi_f;
    EdgeField f;
};

StokesForcing discretize_forcing(const ScalarFn2& psi_f, const ScalarFn2& phi_f,
                                 const MeshPtr& mesh);

struct StokesSolution {
    EdgeField u;       // divergence-free, zero on boundary edges
    VertexField psi;   // stream representation of u, zero on boundary duals
    CellField p;       // filled by recover_pressure, zero area-weighted mean
    SolveStats stats;
    double energy_lhs = 0.0;      // |u|_1h
    double energy_rhs = 0.0;      // |psi_f_h|_0h
    double div_max = 0.0;         // componentwise divergence of u
    double eq_residual = 0.0;     // momentum residual on interior edges
};

/// MAC scheme for the incompressible Stokes problem in vorticity form:
/// u_h is parameterized as skew_grad(psi_h) with psi_h zero on
/// boundary-adjacent duals, and the variational problem becomes the SPD
/// vertex system (L psi, L chi) = -(psi_f_h, L chi) for all test chi
/// (L = laplacian_vertex), solved by preconditioned CG.
StokesSolution solve_stokes(const StokesForcing& forcing, const MeshPtr& mesh,
                            double tol = 1e-12);

/// Pressure from the momentum equation restricted to interior edges:
/// g_e = f_e + [skew_grad(curl u)]_e must be discretely irrotational on
/// interior duals (checked against `curl_tol`), then p is its potential,
/// shifted to zero mean. Fills sol.p and sol.eq_residual.
void recover_pressure(StokesSolution& sol, const StokesForcing& forcing,
                      double curl_tol = 1e-9);

struct StudyRow {
    int level = 0;
    double h = 0.0;
    double e_psi = 0.0;
    double e_omega = 0.0;
    double order_psi = 0.0;
    double order_omega = 0.0;
    double energy_lhs = 0.0;
    double energy_rhs = 0.0;
    int cg_iters = 0;
};

struct ConvergenceRecord {
    std::vector<StudyRow> rows;
    std::string to_csv() const;
};

/// Exact solution data for a manufactured convergence study: the stream
/// function (vanishing with its gradient on the boundary), its Laplacian
/// (the vorticity), and the pressure. The forcing follows from the
/// vorticity form: psi_f = -omega, phi_f = p.
struct StokesExact {
    ScalarFn2 psi;
    ScalarFn2 omega;
    ScalarFn2 pressure;
};

/// Runs solve + pressure recovery per mesh; errors are dual-cell L2 norms
/// of (psi_h - psi) and (curl u_h - omega) by polygon quadrature; observed
/// orders between consecutive levels.
ConvergenceRecord convergence_study(const StokesExact& exact,
                                    const std::vector<MeshPtr>& meshes, double tol = 1e-12);

} // namespace stagvc
