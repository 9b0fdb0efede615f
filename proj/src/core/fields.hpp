#pragma once

#include "mesh.hpp"

#include <string>
#include <vector>

namespace stagvc {

/// Piecewise-constant scalar field on the primary cells.
struct CellField {
    MeshPtr mesh;
    std::vector<double> v;

    CellField() = default;
    explicit CellField(MeshPtr m) : mesh(std::move(m)), v(mesh->n_cells_total(), 0.0) {}
    int size() const { return static_cast<int>(v.size()); }
    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }
};

/// Piecewise-constant scalar field on the dual cells.
struct VertexField {
    MeshPtr mesh;
    std::vector<double> v;

    VertexField() = default;
    explicit VertexField(MeshPtr m) : mesh(std::move(m)), v(mesh->n_verts(), 0.0) {}
    int size() const { return static_cast<int>(v.size()); }
    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }
};

/// Discrete vector field: one normal component per edge pair.
struct EdgeField {
    MeshPtr mesh;
    std::vector<double> v;

    EdgeField() = default;
    explicit EdgeField(MeshPtr m) : mesh(std::move(m)), v(mesh->n_edges_total(), 0.0) {}
    int size() const { return static_cast<int>(v.size()); }
    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }
};

/// Throws when the two fields live on different mesh objects.
void require_same_mesh(std::uint64_t a, std::uint64_t b, const char* what);

// Area-weighted L2 norms (cell areas / dual areas / diamond areas).
double norm_l2(const CellField& f);
double norm_l2(const VertexField& f);
double norm_l2(const EdgeField& f);

// Area-weighted inner products inducing the norms above.
double inner(const CellField& a, const CellField& b);
double inner(const VertexField& a, const VertexField& b);
double inner(const EdgeField& a, const EdgeField& b);

double max_abs(const std::vector<double>& v);

/// Area-weighted mean sum(A_i f_i) / sum(A_i).
double mean(const CellField& f);

/// Shifts the field to zero area-weighted mean; returns the shift applied.
double shift_to_zero_mean(CellField& f);

/// CSV export: header with a mesh reference, then kind,index,value rows.
void write_field_csv(const std::string& path, const std::string& kind,
                     const std::vector<double>& values, const std::string& mesh_ref);

} // namespace stagvc
