#include "operators.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace stagvc {

EdgeField grad(const CellField& phi) {
    const StaggeredMesh& m = *phi.mesh;
    EdgeField g(phi.mesh);
    for (int e = 0; e < m.n_edges_total(); ++e) {
        const EdgePair& ep = m.edges[e];
        double s = 0.0;
        for (int k = 0; k < ep.n_cells; ++k) s += phi.v[ep.cell[k]] * ep.cell_sign[k];
        g.v[e] = -s / ep.dual_len;
    }
    return g;
}

EdgeField skew_grad(const VertexField& psi) {
    const StaggeredMesh& m = *psi.mesh;
    EdgeField g(psi.mesh);
    for (int e = 0; e < m.n_edges_total(); ++e) {
        const EdgePair& ep = m.edges[e];
        double s = 0.0;
        for (int k = 0; k < ep.n_verts; ++k) s += psi.v[ep.vert[k]] * ep.vert_sign[k];
        g.v[e] = s / ep.flux_len();
    }
    return g;
}

CellField div(const EdgeField& u) {
    const StaggeredMesh& m = *u.mesh;
    CellField d(u.mesh);
    for (int i = 0; i < m.n_cells_total(); ++i) {
        double s = 0.0;
        for (const int* pe = m.edges_of_cell.begin(i); pe != m.edges_of_cell.end(i); ++pe) {
            const EdgePair& ep = m.edges[*pe];
            int sign = ep.cell[0] == i ? ep.cell_sign[0] : ep.cell_sign[1];
            s += u.v[*pe] * ep.flux_len() * sign;
        }
        d.v[i] = s / m.cells[i].area;
    }
    return d;
}

VertexField curl(const EdgeField& u) {
    const StaggeredMesh& m = *u.mesh;
    VertexField c(u.mesh);
    for (int nu = 0; nu < m.n_verts(); ++nu) {
        double s = 0.0;
        for (const int* pe = m.edges_of_vert.begin(nu); pe != m.edges_of_vert.end(nu); ++pe) {
            const EdgePair& ep = m.edges[*pe];
            int sign = ep.vert[0] == nu ? ep.vert_sign[0] : ep.vert_sign[1];
            s += u.v[*pe] * ep.dual_len * sign;
        }
        c.v[nu] = -s / m.duals[nu].area;
    }
    return c;
}

CellField laplacian_cell(const CellField& phi) { return div(grad(phi)); }

VertexField laplacian_vertex(const VertexField& psi) { return curl(skew_grad(psi)); }

double semi_h1(const EdgeField& u) {
    double a = norm_l2(div(u));
    double b = norm_l2(curl(u));
    return std::sqrt(a * a + b * b);
}

namespace {

CsrMatrix assemble_grad(const StaggeredMesh& m) {
    std::vector<Triplet> t;
    for (int e = 0; e < m.n_edges_total(); ++e) {
        const EdgePair& ep = m.edges[e];
        for (int k = 0; k < ep.n_cells; ++k)
            t.push_back({e, ep.cell[k], -ep.cell_sign[k] / ep.dual_len});
    }
    return csr_from_triplets(m.n_edges_total(), m.n_cells_total(), std::move(t));
}

CsrMatrix assemble_skew_grad(const StaggeredMesh& m) {
    std::vector<Triplet> t;
    for (int e = 0; e < m.n_edges_total(); ++e) {
        const EdgePair& ep = m.edges[e];
        for (int k = 0; k < ep.n_verts; ++k)
            t.push_back({e, ep.vert[k], ep.vert_sign[k] / ep.flux_len()});
    }
    return csr_from_triplets(m.n_edges_total(), m.n_verts(), std::move(t));
}

CsrMatrix assemble_div(const StaggeredMesh& m) {
    std::vector<Triplet> t;
    for (int e = 0; e < m.n_edges_total(); ++e) {
        const EdgePair& ep = m.edges[e];
        for (int k = 0; k < ep.n_cells; ++k) {
            int i = ep.cell[k];
            t.push_back({i, e, ep.flux_len() * ep.cell_sign[k] / m.cells[i].area});
        }
    }
    return csr_from_triplets(m.n_cells_total(), m.n_edges_total(), std::move(t));
}

CsrMatrix assemble_curl(const StaggeredMesh& m) {
    std::vector<Triplet> t;
    for (int e = 0; e < m.n_edges_total(); ++e) {
        const EdgePair& ep = m.edges[e];
        for (int k = 0; k < ep.n_verts; ++k) {
            int nu = ep.vert[k];
            t.push_back({nu, e, -ep.dual_len * ep.vert_sign[k] / m.duals[nu].area});
        }
    }
    return csr_from_triplets(m.n_verts(), m.n_edges_total(), std::move(t));
}

CsrMatrix compose(const CsrMatrix& a, const CsrMatrix& b) {
    // a*b with b in CSR; fine for the small stencils here
    std::vector<Triplet> t;
    for (int r = 0; r < a.rows; ++r)
        for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
            int mid = a.col_idx[k];
            for (int j = b.row_ptr[mid]; j < b.row_ptr[mid + 1]; ++j)
                t.push_back({r, b.col_idx[j], a.values[k] * b.values[j]});
        }
    return csr_from_triplets(a.rows, b.cols, std::move(t));
}

} // namespace

OperatorMatrix assemble(OpKind kind, const MeshPtr& mesh) {
    OperatorMatrix om;
    om.kind = kind;
    om.mesh_token = mesh->token;
    switch (kind) {
        case OpKind::Grad: om.matrix = assemble_grad(*mesh); break;
        case OpKind::SkewGrad: om.matrix = assemble_skew_grad(*mesh); break;
        case OpKind::Div: om.matrix = assemble_div(*mesh); break;
        case OpKind::Curl: om.matrix = assemble_curl(*mesh); break;
        case OpKind::LaplacianCell:
            om.matrix = compose(assemble_div(*mesh), assemble_grad(*mesh));
            break;
        case OpKind::LaplacianVertex:
            om.matrix = compose(assemble_curl(*mesh), assemble_skew_grad(*mesh));
            break;
    }
    return om;
}

const CsrMatrix& Operators::div_matrix() const {
    if (div_.empty()) div_ = assemble(OpKind::Div, mesh_).matrix;
    return div_;
}
const CsrMatrix& Operators::curl_matrix() const {
    if (curl_.empty()) curl_ = assemble(OpKind::Curl, mesh_).matrix;
    return curl_;
}
const CsrMatrix& Operators::grad_matrix() const {
    if (grad_.empty()) grad_ = assemble(OpKind::Grad, mesh_).matrix;
    return grad_;
}
const CsrMatrix& Operators::skew_grad_matrix() const {
    if (skew_.empty()) skew_ = assemble(OpKind::SkewGrad, mesh_).matrix;
    return skew_;
}
const CsrMatrix& Operators::laplacian_cell_matrix() const {
    if (lap_c_.empty()) lap_c_ = assemble(OpKind::LaplacianCell, mesh_).matrix;
    return lap_c_;
}
const CsrMatrix& Operators::laplacian_vertex_matrix() const {
    if (lap_v_.empty()) lap_v_ = assemble(OpKind::LaplacianVertex, mesh_).matrix;
    return lap_v_;
}

void write_matrix_market(const CsrMatrix& m, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_matrix_market: cannot open " + path);
    std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
    std::fprintf(f, "%d %d %d\n", m.rows, m.cols, m.nnz());
    for (int r = 0; r < m.rows; ++r)
        for (int k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
            std::fprintf(f, "%d %d %.17g\n", r + 1, m.col_idx[k] + 1, m.values[k]);
    std::fclose(f);
}

} // namespace stagvc
