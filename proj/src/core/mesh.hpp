#pragma once

#include "vec2.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace stagvc {

/// Primary cell of the staggered pair. Boundary cells are clipped at the
/// domain boundary and store only their in-domain area.
struct PrimaryCell {
    Vec2 center;
    double area = 0.0;
    bool is_boundary = false;
};

/// Dual cell; its center is a vertex of the primary mesh.
struct DualCell {
    Vec2 center;
    double area = 0.0;
    bool touches_boundary = false;
};

/// An edge pair: a primary cell edge and the orthogonal dual cell edge
/// crossing it. `normal` is the unit normal of the primary edge (pointing
/// along the dual edge); `tangent` = k x normal is tangent to the primary
/// edge. `primary_len` (l_e) is the distance between the two dual centers
/// (mirror-extended on boundary pairs), `dual_len` (d_e) the distance
/// between the two primary centers, `area` the in-domain diamond area.
///
/// The effective flux length used by the discrete operators is
/// 2*area/dual_len, which equals primary_len on interior pairs and the
/// clipped half-length on boundary pairs; the discrete integration-by-parts
/// identities hold exactly with that choice.
struct EdgePair {
    Vec2 normal;
    Vec2 tangent;
    double primary_len = 0.0;  // l_e
    double dual_len = 0.0;     // d_e
    double area = 0.0;         // diamond area A_e
    Vec2 crossing;             // intersection of the two edges

    int n_cells = 0;
    std::array<int, 2> cell = {-1, -1};      // CE(e), 0-based
    std::array<int, 2> cell_sign = {0, 0};   // n_{e,i}
    int n_verts = 0;
    std::array<int, 2> vert = {-1, -1};      // VE(e), 0-based
    std::array<int, 2> vert_sign = {0, 0};   // t_{e,nu}

    bool is_boundary() const { return n_verts == 1; }
    double flux_len() const { return 2.0 * area / dual_len; }
};

/// Compressed adjacency: items(i) = [data[offset[i]], data[offset[i]+1]).
struct Adjacency {
    std::vector<int> offset;
    std::vector<int> data;
    int count(int i) const { return offset[i + 1] - offset[i]; }
    const int* begin(int i) const { return data.data() + offset[i]; }
    const int* end(int i) const { return data.data() + offset[i + 1]; }
};

/// Staggered primary/dual mesh pair. Interior cells come first
/// (indices [0, n_interior_cells)), then boundary cells; likewise interior
/// edges before boundary edges. Immutable after construction.
struct StaggeredMesh {
    std::vector<PrimaryCell> cells;
    std::vector<DualCell> duals;
    std::vector<EdgePair> edges;
    int n_interior_cells = 0;  // N_c
    int n_interior_edges = 0;  // N_e
    double h = 0.0;            // quasi-uniformity scale: max edge length

    // Connectivity derived from the edge records (Table-1 sets).
    Adjacency edges_of_cell;   // EC(i)
    Adjacency verts_of_cell;   // VC(i)
    Adjacency cells_of_vert;   // CV(nu)
    Adjacency edges_of_vert;   // EV(nu)

    // Geometry available on generated meshes (empty after file load).
    std::vector<std::vector<Vec2>> cell_polygons;
    std::vector<std::vector<Vec2>> dual_polygons;
    std::vector<Vec2> domain;  // convex domain polygon, counterclockwise

    std::uint64_t token = 0;   // identity token for field/mesh association

    int n_cells_total() const { return static_cast<int>(cells.size()); }
    int n_boundary_cells() const { return n_cells_total() - n_interior_cells; }
    int n_verts() const { return static_cast<int>(duals.size()); }
    int n_edges_total() const { return static_cast<int>(edges.size()); }
    int n_boundary_edges() const { return n_edges_total() - n_interior_edges; }

    /// Euler residual (Nc+Ncb+Nv) - (Ne+Neb+1); zero on a valid mesh.
    long long euler_residual() const {
        return static_cast<long long>(n_cells_total()) + n_verts() -
               (static_cast<long long>(n_edges_total()) + 1);
    }

    bool has_polygons() const { return !cell_polygons.empty() && !dual_polygons.empty(); }

    /// Rebuilds EC/VC/CV/EV from the per-edge CE/VE lists and assigns a
    /// fresh identity token. Called by generators and the reader.
    void finalize();
};

using MeshPtr = std::shared_ptr<const StaggeredMesh>;

/// Quadrilateral staggered grid on an axis-aligned rectangle. Primary cell
/// centers sit on the (nx+1) x (ny+1) lattice including the boundary, dual
/// centers at the nx x ny cell midpoints; all edge pairs bisect exactly.
MeshPtr build_quad_mesh(int nx, int ny, Vec2 lo = {0.0, 0.0}, Vec2 hi = {1.0, 1.0});

/// Equilateral-triangle primary mesh with equiangular (non-uniform)
/// hexagonal dual cells on a 60-degree rhombus with unit side; dual edges
/// cross the primary edges at their midpoint or one-third point. The side
/// is divided into 3*refinement segments.
MeshPtr build_tri_hex_mesh(int refinement);

/// Delaunay-Voronoi staggered grid on a convex polygonal domain:
/// Voronoi cells are the primary mesh, Delaunay triangles the dual mesh.
/// `seed_count` interior seeds are sampled uniformly (deterministic in
/// rng_seed); boundary seeds (polygon corners plus evenly spaced side
/// points) are added so the boundary passes through boundary cell centers.
/// Lloyd relaxation moves interior seeds to their cell centroids.
MeshPtr build_voronoi_mesh(int seed_count, const std::vector<Vec2>& domain,
                           int lloyd_iters, unsigned long long rng_seed);

/// Voronoi mesh from an explicit seed list (seeds on the domain boundary
/// become boundary cells). Used by build_voronoi_mesh and by tests.
MeshPtr build_voronoi_mesh_from_seeds(std::vector<Vec2> seeds,
                                      const std::vector<Vec2>& domain,
                                      int lloyd_iters);

struct ValidationReport {
    long long euler_residual = 0;
    double max_orthogonality_defect = 0.0;  // |sin(angle)| between dual edge and n_e
    int nonconvex_diamonds = 0;             // crossing outside an edge segment
    double m_realized = 0.0;                // min(l_e,d_e)/h
    double big_m_realized = 0.0;            // max(l_e,d_e)/h
    double max_bisection_defect = 0.0;      // max offset of crossing from either midpoint
    double bisection_defect_over_h2 = 0.0;
    bool connectivity_ok = true;
    std::string first_connectivity_issue;
    bool indicators_ok = true;
    std::string first_indicator_issue;
    double primary_area_sum = 0.0;
    double dual_area_sum = 0.0;
    double area_mismatch_rel = 0.0;         // |sum_p - sum_d| / sum_p
    double domain_area_rel_err = 0.0;       // vs domain polygon when known

    bool ok() const {
        return euler_residual == 0 && connectivity_ok && indicators_ok &&
               max_orthogonality_defect < 1e-10 && area_mismatch_rel < 1e-10;
    }
    std::string summary() const;
};

/// Structural and geometric checks; never throws, all findings are entries.
ValidationReport validate(const StaggeredMesh& mesh);

/// Line-oriented text format, 17 significant digits; see README.
void write_mesh(const StaggeredMesh& mesh, const std::string& path);

/// Rejects files violating the Euler identity or connectivity symmetry with
/// a diagnostic naming the first offending element.
MeshPtr read_mesh(const std::string& path);

} // namespace stagvc
