#pragma once

#include "decomposition.hpp"

#include <functional>

namespace stagvc {

using ScalarFn2 = std::function<double(double, double)>;

/// Analytic vector field with the derived scalars needed by the
/// restriction operators: omega = curl u, delta = div u, and (for the
/// divergence-free space) a stream function psi with u = perp-grad(psi).
struct SmoothVectorField {
    ScalarFn2 ux;
    ScalarFn2 uy;
    ScalarFn2 omega;
    ScalarFn2 delta;
    ScalarFn2 psi;  // stokes variant only
};

/// Discrete image of the isomorphism for the general space: (curl, div).
struct FImageGeneral {
    VertexField omega;
    CellField delta;
};

/// Discrete image for the divergence-free space: (stream, curl).
struct FImageStokes {
    VertexField psi;
    VertexField omega;
};

/// Restriction into V_h for the general space: vorticity point-sampled at
/// dual centers, divergence cell-averaged (then shifted by its tiny
/// quadrature mean so the compatibility integral vanishes), and the edge
/// field reconstructed from that curl/div data.
EdgeField restrict_general(const SmoothVectorField& u, const MeshPtr& mesh,
                           double tol = 1e-11);

FImageGeneral prolong_general(const EdgeField& u);

/// Restriction for the divergence-free space: the stream function sampled
/// at interior dual centers, zero on boundary-adjacent duals, then the
/// skewed gradient. The result is discretely divergence-free and vanishes
/// on boundary edges.
EdgeField restrict_stokes(const SmoothVectorField& u, const MeshPtr& mesh);

/// (stream by path integration with the boundary gauge, discrete curl).
FImageStokes prolong_stokes(const EdgeField& u);

enum class EdgeAverage {
    DualEdge,           // mean of u.n along the dual edge
    PrimaryEdge,        // mean of u.n along the primary edge
    PrimaryFirstThird,  // mean of u.n along the initial third of the primary
                        // edge, from its lower-indexed dual vertex; on the
                        // tri-hex mesh this variant realizes the three-value
                        // vorticity pattern (the full-edge mean gives an
                        // identically zero discrete vorticity there)
};

/// Averaging restriction (the non-convergent alternative): u_e is the mean
/// of the normal component along the chosen edge, 3-point Gauss per segment.
EdgeField restrict_by_edge_averaging(const SmoothVectorField& u, const MeshPtr& mesh,
                                     EdgeAverage choice);

enum class ApproxVariant { General, Stokes };

/// ||P_h R_h u - Pi u||_F with the analytic components projected onto
/// piecewise constants by the same quadrature the restriction uses.
double c1_error(const SmoothVectorField& u, ApproxVariant variant, const MeshPtr& mesh,
                double tol = 1e-11);

/// Distinct values of `values[i]` for indices with mask[i] != 0, merged
/// within `tol` and sorted. Used for the counterexample value tables.
std::vector<double> distinct_values(const std::vector<double>& values,
                                    const std::vector<char>& mask, double tol);

} // namespace stagvc
