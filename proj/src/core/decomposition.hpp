#pragma once

#include "operators.hpp"

namespace stagvc {

struct HelmholtzParts {
    VertexField psi;   // stream part, u ~ skew_grad(psi) + grad(phi)
    CellField phi;     // potential part, zero area-weighted mean
    SolveStats psi_stats;
    SolveStats phi_stats;
};

/// Orthogonal decomposition u = skew_grad(psi) + grad(phi) via the two
/// scalar elliptic solves laplacian_vertex(psi) = curl(u) and
/// laplacian_cell(phi) = div(u).
HelmholtzParts helmholtz_decompose(const EdgeField& u, double tol = 1e-11);

/// Unique u with curl(u) = omega and div(u) = delta. Requires the
/// area-weighted integral of delta to vanish; throws with the computed
/// integral otherwise.
EdgeField reconstruct_from_curl_div(const VertexField& omega, const CellField& delta,
                                    double tol = 1e-11, SolveStats* psi_stats = nullptr,
                                    SolveStats* phi_stats = nullptr);

/// Stream function of a discretely divergence-free field by breadth-first
/// path integration over the dual-vertex graph (anchor value 0 at vertex 0;
/// when boundary pairs exist the gauge is re-pinned by the boundary-edge
/// relation). Non-tree edges with closure mismatch beyond
/// 1e-11*(1+|u|_0h) signal a non-solenoidal input and throw.
VertexField integrate_stream(const EdgeField& u);

/// Scalar potential of a discretely irrotational field by path integration
/// over the primary-cell graph, shifted to zero area-weighted mean.
CellField integrate_potential(const EdgeField& u);

/// Potential integration restricted to interior edges (the pressure
/// recovery path). Cells unreachable through interior edges (corner cells
/// of quadrilateral meshes) are filled from their boundary-edge relations.
CellField integrate_potential_interior(const EdgeField& g);

enum class SpaceKind { Cell, Vertex, Edge };

/// Empirical discrete Poincare constant: the maximal ratio
/// |x|_0h / |x|_1h over the admissible subspace (zero-mean cell fields;
/// the whole vertex / edge spaces), by power iteration on the inverse
/// operator to 1e-6 relative.
double poincare_constant(SpaceKind kind, const MeshPtr& mesh);

} // namespace stagvc
