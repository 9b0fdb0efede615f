#pragma once

#include "fields.hpp"
#include "linalg.hpp"

#include <string>

namespace stagvc {

// First-order mimetic operators on the staggered pair. On every edge the
// divergence flux length and the skewed-gradient denominator are the
// effective length 2*A_e/d_e (the primary edge length on interior pairs,
// its in-domain half on boundary pairs), which makes the discrete
// integration-by-parts identities and the exact sequences hold to rounding.

/// [grad phi]_e = -(1/d_e) sum_{i in CE(e)} phi_i n_{e,i}
EdgeField grad(const CellField& phi);

/// [skew_grad psi]_e = (1/flux_e) sum_{nu in VE(e)} psi_nu t_{e,nu};
/// the single-term form on boundary pairs encodes psi = 0 on the boundary.
EdgeField skew_grad(const VertexField& psi);

/// [div u]_i = (1/A_i) sum_{e in EC(i)} u_e flux_e n_{e,i}; boundary cells
/// sum their in-domain edges only (no-flux across the domain boundary).
CellField div(const EdgeField& u);

/// [curl u]_nu = -(1/A_nu) sum_{e in EV(nu)} u_e d_e t_{e,nu}
VertexField curl(const EdgeField& u);

/// div(grad(phi)); symmetric negative semidefinite in the cell inner product.
CellField laplacian_cell(const CellField& phi);

/// curl(skew_grad(psi)); a homogeneous-Dirichlet Laplacian when boundary
/// pairs are present.
VertexField laplacian_vertex(const VertexField& psi);

/// sqrt(|div u|^2 + |curl u|^2): the discrete semi-H1 norm of V_h.
double semi_h1(const EdgeField& u);

enum class OpKind { Grad, SkewGrad, Div, Curl, LaplacianCell, LaplacianVertex };

/// Assembled sparse form of one operator; action matches the matrix-free
/// functions to rounding.
struct OperatorMatrix {
    OpKind kind;
    CsrMatrix matrix;
    std::uint64_t mesh_token = 0;
};

OperatorMatrix assemble(OpKind kind, const MeshPtr& mesh);

/// Assembled operators for one mesh, built lazily and shared by the solvers.
class Operators {
public:
    explicit Operators(MeshPtr mesh) : mesh_(std::move(mesh)) {}
    const MeshPtr& mesh() const { return mesh_; }
    const CsrMatrix& div_matrix() const;
    const CsrMatrix& curl_matrix() const;
    const CsrMatrix& grad_matrix() const;
    const CsrMatrix& skew_grad_matrix() const;
    const CsrMatrix& laplacian_cell_matrix() const;
    const CsrMatrix& laplacian_vertex_matrix() const;

private:
    MeshPtr mesh_;
    mutable CsrMatrix div_, curl_, grad_, skew_, lap_c_, lap_v_;
};

/// MatrixMarket coordinate export (1-based indices).
void write_matrix_market(const CsrMatrix& m, const std::string& path);

} // namespace stagvc
