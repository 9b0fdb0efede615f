#include "mesh.hpp"

#include "polygon.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stagvc {

namespace {

std::atomic<std::uint64_t> g_mesh_token{1};

Adjacency invert(int n_items, const std::vector<std::pair<int, int>>& pairs) {
    // pairs of (item, value); values kept in insertion order per item
    Adjacency adj;
    adj.offset.assign(n_items + 1, 0);
    for (auto& p : pairs) adj.offset[p.first + 1]++;
    for (int i = 0; i < n_items; ++i) adj.offset[i + 1] += adj.offset[i];
    adj.data.resize(pairs.size());
    std::vector<int> fill(adj.offset.begin(), adj.offset.end() - 1);
    for (auto& p : pairs) adj.data[fill[p.first]++] = p.second;
    return adj;
}

} // namespace

void StaggeredMesh::finalize() {
    std::vector<std::pair<int, int>> ec, ev;
    for (int e = 0; e < n_edges_total(); ++e) {
        for (int k = 0; k < edges[e].n_cells; ++k) ec.push_back({edges[e].cell[k], e});
        for (int k = 0; k < edges[e].n_verts; ++k) ev.push_back({edges[e].vert[k], e});
    }
    edges_of_cell = invert(n_cells_total(), ec);
    edges_of_vert = invert(n_verts(), ev);

    // VC(i): dual cells that are vertices of cell i; CV(nu): transpose.
    // Derived from the edge records: the dual cells on the edges of a cell.
    std::vector<std::pair<int, int>> vc, cv;
    {
        std::vector<int> seen(n_verts(), -1);
        for (int i = 0; i < n_cells_total(); ++i) {
            for (const int* ep = edges_of_cell.begin(i); ep != edges_of_cell.end(i); ++ep) {
                const EdgePair& edge = edges[*ep];
                for (int k = 0; k < edge.n_verts; ++k) {
                    int v = edge.vert[k];
                    if (seen[v] != i) {
                        seen[v] = i;
                        vc.push_back({i, v});
                        cv.push_back({v, i});
                    }
                }
            }
        }
    }
    verts_of_cell = invert(n_cells_total(), vc);
    std::sort(cv.begin(), cv.end());
    cells_of_vert = invert(n_verts(), cv);

    token = g_mesh_token.fetch_add(1);
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << "euler_residual=" << euler_residual
       << " orthogonality_defect=" << max_orthogonality_defect
       << " nonconvex_diamonds=" << nonconvex_diamonds
       << " m=" << m_realized << " M=" << big_m_realized
       << " bisection_defect=" << max_bisection_defect
       << " defect/h^2=" << bisection_defect_over_h2
       << " connectivity=" << (connectivity_ok ? "ok" : first_connectivity_issue.c_str())
       << " indicators=" << (indicators_ok ? "ok" : first_indicator_issue.c_str())
       << " area_mismatch_rel=" << area_mismatch_rel;
    return os.str();
}

ValidationReport validate(const StaggeredMesh& mesh) {
    ValidationReport r;
    r.euler_residual = mesh.euler_residual();

    double min_len = 1e300, max_len = 0.0;
    for (int e = 0; e < mesh.n_edges_total(); ++e) {
        const EdgePair& ep = mesh.edges[e];

        // orthogonality: the dual edge direction (between primary centers)
        // must be parallel to the stored normal
        if (ep.n_cells == 2) {
            Vec2 d = normalized(mesh.cells[ep.cell[1]].center - mesh.cells[ep.cell[0]].center);
            r.max_orthogonality_defect =
                std::max(r.max_orthogonality_defect, std::abs(cross(d, ep.normal)));
        }

        // convexity: crossing strictly inside both segments
        bool convex = true;
        if (ep.n_cells == 2) {
            Vec2 a = mesh.cells[ep.cell[0]].center, b = mesh.cells[ep.cell[1]].center;
            double t = dot(ep.crossing - a, b - a) / dot(b - a, b - a);
            if (!(t > 0.0 && t < 1.0)) convex = false;
        }
        if (ep.n_verts == 2) {
            Vec2 a = mesh.duals[ep.vert[0]].center, b = mesh.duals[ep.vert[1]].center;
            double t = dot(ep.crossing - a, b - a) / dot(b - a, b - a);
            if (!(t > 0.0 && t < 1.0)) convex = false;
        }
        if (!convex) r.nonconvex_diamonds++;

        // bisection defect: offset of the crossing from both edge midpoints
        double defect = 0.0;
        if (ep.n_verts == 2) {
            defect = std::max(defect, dist(ep.crossing, midpoint(mesh.duals[ep.vert[0]].center,
                                                                 mesh.duals[ep.vert[1]].center)));
        }
        if (ep.n_cells == 2) {
            defect = std::max(defect, dist(ep.crossing, midpoint(mesh.cells[ep.cell[0]].center,
                                                                 mesh.cells[ep.cell[1]].center)));
        }
        r.max_bisection_defect = std::max(r.max_bisection_defect, defect);

        min_len = std::min(min_len, std::min(ep.primary_len, ep.dual_len));
        max_len = std::max(max_len, std::max(ep.primary_len, ep.dual_len));

        // indicator checks: signs must be geometric and opposite
        for (int k = 0; k < ep.n_cells; ++k) {
            double s = dot(ep.normal, ep.crossing - mesh.cells[ep.cell[k]].center);
            int want = s > 0.0 ? 1 : -1;
            if (ep.cell_sign[k] != want && r.indicators_ok) {
                r.indicators_ok = false;
                std::ostringstream os;
                os << "edge " << e << ": n-indicator of cell " << ep.cell[k]
                   << " is " << ep.cell_sign[k] << ", geometry says " << want;
                r.first_indicator_issue = os.str();
            }
        }
        if (ep.n_cells == 2 && ep.cell_sign[0] + ep.cell_sign[1] != 0 && r.indicators_ok) {
            r.indicators_ok = false;
            std::ostringstream os;
            os << "edge " << e << ": n-indicators do not sum to zero";
            r.first_indicator_issue = os.str();
        }
        for (int k = 0; k < ep.n_verts; ++k) {
            double s = dot(ep.tangent, ep.crossing - mesh.duals[ep.vert[k]].center);
            int want = s > 0.0 ? 1 : -1;
            if (ep.vert_sign[k] != want && r.indicators_ok) {
                r.indicators_ok = false;
                std::ostringstream os;
                os << "edge " << e << ": t-indicator of dual " << ep.vert[k]
                   << " is " << ep.vert_sign[k] << ", geometry says " << want;
                r.first_indicator_issue = os.str();
            }
        }
        if (ep.n_verts == 2 && ep.vert_sign[0] + ep.vert_sign[1] != 0 && r.indicators_ok) {
            r.indicators_ok = false;
            r.first_indicator_issue = "edge t-indicators do not sum to zero";
        }

        // interior-first ordering and incidence counts
        if (e < mesh.n_interior_edges && ep.n_verts != 2 && r.connectivity_ok) {
            r.connectivity_ok = false;
            std::ostringstream os;
            os << "interior edge " << e << " has " << ep.n_verts << " dual cells";
            r.first_connectivity_issue = os.str();
        }
        if (e >= mesh.n_interior_edges && ep.n_verts != 1 && r.connectivity_ok) {
            r.connectivity_ok = false;
            std::ostringstream os;
            os << "boundary edge " << e << " has " << ep.n_verts << " dual cells";
            r.first_connectivity_issue = os.str();
        }
    }
    if (mesh.n_edges_total() > 0) {
        r.m_realized = min_len / mesh.h;
        r.big_m_realized = max_len / mesh.h;
        r.bisection_defect_over_h2 = r.max_bisection_defect / (mesh.h * mesh.h);
    }

    // connectivity symmetry: i in CE(e) <=> e in EC(i), nu in VE(e) <=> e in EV(nu)
    for (int e = 0; e < mesh.n_edges_total() && r.connectivity_ok; ++e) {
        const EdgePair& ep = mesh.edges[e];
        for (int k = 0; k < ep.n_cells; ++k) {
            int i = ep.cell[k];
            bool found = false;
            if (i >= 0 && i < mesh.n_cells_total())
                for (const int* p = mesh.edges_of_cell.begin(i);
                     p != mesh.edges_of_cell.end(i); ++p)
                    if (*p == e) found = true;
            if (!found) {
                r.connectivity_ok = false;
                std::ostringstream os;
                os << "edge " << e << " lists cell " << i << " but EC(" << i
                   << ") does not list the edge";
                r.first_connectivity_issue = os.str();
            }
        }
        for (int k = 0; k < ep.n_verts; ++k) {
            int v = ep.vert[k];
            bool found = false;
            if (v >= 0 && v < mesh.n_verts())
                for (const int* p = mesh.edges_of_vert.begin(v);
                     p != mesh.edges_of_vert.end(v); ++p)
                    if (*p == e) found = true;
            if (!found) {
                r.connectivity_ok = false;
                std::ostringstream os;
                os << "edge " << e << " lists dual " << v << " but EV(" << v
                   << ") does not list the edge";
                r.first_connectivity_issue = os.str();
            }
        }
    }

    for (auto& c : mesh.cells) r.primary_area_sum += c.area;
    for (auto& d : mesh.duals) r.dual_area_sum += d.area;
    r.area_mismatch_rel =
        std::abs(r.primary_area_sum - r.dual_area_sum) / std::max(r.primary_area_sum, 1e-300);
    if (!mesh.domain.empty()) {
        double da = polygon_area(mesh.domain);
        r.domain_area_rel_err =
            std::max(std::abs(r.primary_area_sum - da), std::abs(r.dual_area_sum - da)) / da;
    }
    return r;
}

// ---------------------------------------------------------------------------
// File format (one mesh per file):
//   stagmesh v1
//   Nc Ncb Nv Ne Neb h
//   [primary]
//   idx cx cy area boundary_flag          (idx 1-based)
//   [dual]
//   idx cx cy area
//   [edges]
//   idx nx ny le de Ae ix iy  k i1 s1 [i2 s2]  m v1 t1 [v2 t2]
// ---------------------------------------------------------------------------

void write_mesh(const StaggeredMesh& mesh, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_mesh: cannot open " + path);
    std::fprintf(f, "stagmesh v1\n");
    std::fprintf(f, "%d %d %d %d %d %.17g\n", mesh.n_interior_cells, mesh.n_boundary_cells(),
                 mesh.n_verts(), mesh.n_interior_edges, mesh.n_boundary_edges(), mesh.h);
    std::fprintf(f, "[primary]\n");
    for (int i = 0; i < mesh.n_cells_total(); ++i) {
        const PrimaryCell& c = mesh.cells[i];
        std::fprintf(f, "%d %.17g %.17g %.17g %d\n", i + 1, c.center.x, c.center.y, c.area,
                     c.is_boundary ? 1 : 0);
    }
    std::fprintf(f, "[dual]\n");
    for (int v = 0; v < mesh.n_verts(); ++v) {
        const DualCell& d = mesh.duals[v];
        std::fprintf(f, "%d %.17g %.17g %.17g\n", v + 1, d.center.x, d.center.y, d.area);
    }
    std::fprintf(f, "[edges]\n");
    for (int e = 0; e < mesh.n_edges_total(); ++e) {
        const EdgePair& ep = mesh.edges[e];
        std::fprintf(f, "%d %.17g %.17g %.17g %.17g %.17g %.17g %.17g %d", e + 1, ep.normal.x,
                     ep.normal.y, ep.primary_len, ep.dual_len, ep.area, ep.crossing.x,
                     ep.crossing.y, ep.n_cells);
        for (int k = 0; k < ep.n_cells; ++k)
            std::fprintf(f, " %d %d", ep.cell[k] + 1, ep.cell_sign[k]);
        std::fprintf(f, " %d", ep.n_verts);
        for (int k = 0; k < ep.n_verts; ++k)
            std::fprintf(f, " %d %d", ep.vert[k] + 1, ep.vert_sign[k]);
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line_no, const std::string& what) {
    std::ostringstream os;
    os << "read_mesh: " << path << ":" << line_no << ": " << what;
    throw std::runtime_error(os.str());
}

} // namespace

MeshPtr read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_mesh: cannot open " + path);
    auto mesh = std::make_shared<StaggeredMesh>();
    std::string line;
    int line_no = 0;
    auto next_line = [&](const char* expect_what) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty()) return true;
        }
        if (expect_what) parse_fail(path, line_no, std::string("missing ") + expect_what);
        return false;
    };

    next_line("header 'stagmesh v1'");
    if (line != "stagmesh v1") parse_fail(path, line_no, "bad header, expected 'stagmesh v1'");
    next_line("counts line");
    int nc, ncb, nv, ne, neb;
    double h;
    if (std::sscanf(line.c_str(), "%d %d %d %d %d %lg", &nc, &ncb, &nv, &ne, &neb, &h) != 6)
        parse_fail(path, line_no, "bad counts line");
    if (nc < 0 || ncb < 0 || nv < 0 || ne < 0 || neb < 0)
        parse_fail(path, line_no, "negative counts");

    next_line("[primary] section");
    if (line != "[primary]") parse_fail(path, line_no, "expected [primary] section");
    mesh->cells.resize(nc + ncb);
    mesh->n_interior_cells = nc;
    for (int i = 0; i < nc + ncb; ++i) {
        next_line("[primary] entry");
        int idx, flag;
        PrimaryCell c;
        if (std::sscanf(line.c_str(), "%d %lg %lg %lg %d", &idx, &c.center.x, &c.center.y,
                        &c.area, &flag) != 5)
            parse_fail(path, line_no, "bad primary cell entry");
        if (idx != i + 1) parse_fail(path, line_no, "primary cell indices out of order");
        if (!(c.area > 0.0)) parse_fail(path, line_no, "primary cell with nonpositive area");
        c.is_boundary = flag != 0;
        mesh->cells[i] = c;
    }

    next_line("[dual] section");
    if (line != "[dual]") parse_fail(path, line_no, "expected [dual] section");
    mesh->duals.resize(nv);
    for (int v = 0; v < nv; ++v) {
        next_line("[dual] entry");
        int idx;
        DualCell d;
        if (std::sscanf(line.c_str(), "%d %lg %lg %lg", &idx, &d.center.x, &d.center.y,
                        &d.area) != 4)
            parse_fail(path, line_no, "bad dual cell entry");
        if (idx != v + 1) parse_fail(path, line_no, "dual cell indices out of order");
        if (!(d.area > 0.0)) parse_fail(path, line_no, "dual cell with nonpositive area");
        mesh->duals[v] = d;
    }

    next_line("[edges] section");
    if (line != "[edges]") parse_fail(path, line_no, "expected [edges] section");
    mesh->edges.resize(ne + neb);
    mesh->n_interior_edges = ne;
    for (int e = 0; e < ne + neb; ++e) {
        next_line("[edges] entry");
        std::istringstream is(line);
        int idx;
        EdgePair ep;
        if (!(is >> idx >> ep.normal.x >> ep.normal.y >> ep.primary_len >> ep.dual_len >>
              ep.area >> ep.crossing.x >> ep.crossing.y))
            parse_fail(path, line_no, "bad edge entry");
        if (idx != e + 1) parse_fail(path, line_no, "edge indices out of order");
        if (!(is >> ep.n_cells) || ep.n_cells < 1 || ep.n_cells > 2)
            parse_fail(path, line_no, "bad edge cell count");
        for (int k = 0; k < ep.n_cells; ++k) {
            int i, s;
            if (!(is >> i >> s)) parse_fail(path, line_no, "bad edge cell list");
            if (i < 1 || i > nc + ncb) parse_fail(path, line_no, "edge references bad cell index");
            if (s != 1 && s != -1) parse_fail(path, line_no, "edge n-indicator must be +-1");
            ep.cell[k] = i - 1;
            ep.cell_sign[k] = s;
        }
        if (!(is >> ep.n_verts) || ep.n_verts < 1 || ep.n_verts > 2)
            parse_fail(path, line_no, "bad edge dual count");
        for (int k = 0; k < ep.n_verts; ++k) {
            int v, s;
            if (!(is >> v >> s)) parse_fail(path, line_no, "bad edge dual list");
            if (v < 1 || v > nv) parse_fail(path, line_no, "edge references bad dual index");
            if (s != 1 && s != -1) parse_fail(path, line_no, "edge t-indicator must be +-1");
            ep.vert[k] = v - 1;
            ep.vert_sign[k] = s;
        }
        ep.tangent = perp(ep.normal);
        mesh->edges[e] = ep;
    }
    mesh->h = h;

    if (mesh->euler_residual() != 0) {
        std::ostringstream os;
        os << "read_mesh: " << path << ": Euler identity violated, residual "
           << mesh->euler_residual();
        throw std::runtime_error(os.str());
    }
    for (auto& ep : mesh->edges)
        for (int k = 0; k < ep.n_verts; ++k) mesh->duals[ep.vert[k]].touches_boundary |= ep.is_boundary();
    mesh->finalize();
    ValidationReport rep = validate(*mesh);
    if (!rep.connectivity_ok)
        throw std::runtime_error("read_mesh: " + path + ": " + rep.first_connectivity_issue);
    return mesh;
}

} // namespace stagvc
