#include "fields.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace stagvc {

void require_same_mesh(std::uint64_t a, std::uint64_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": fields on different meshes");
}

double norm_l2(const CellField& f) {
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f.mesh->cells[i].area * f.v[i] * f.v[i];
    return std::sqrt(s);
}

double norm_l2(const VertexField& f) {
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f.mesh->duals[i].area * f.v[i] * f.v[i];
    return std::sqrt(s);
}

double norm_l2(const EdgeField& f) {
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f.mesh->edges[i].area * f.v[i] * f.v[i];
    return std::sqrt(s);
}

double inner(const CellField& a, const CellField& b) {
    require_same_mesh(a.mesh->token, b.mesh->token, "inner(cell)");
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a.mesh->cells[i].area * a.v[i] * b.v[i];
    return s;
}

double inner(const VertexField& a, const VertexField& b) {
    require_same_mesh(a.mesh->token, b.mesh->token, "inner(vertex)");
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a.mesh->duals[i].area * a.v[i] * b.v[i];
    return s;
}

double inner(const EdgeField& a, const EdgeField& b) {
    require_same_mesh(a.mesh->token, b.mesh->token, "inner(edge)");
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a.mesh->edges[i].area * a.v[i] * b.v[i];
    return s;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double mean(const CellField& f) {
    double s = 0.0, a = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        s += f.mesh->cells[i].area * f.v[i];
        a += f.mesh->cells[i].area;
    }
    return s / a;
}

double shift_to_zero_mean(CellField& f) {
    double m = mean(f);
    for (double& x : f.v) x -= m;
    return m;
}

void write_field_csv(const std::string& path, const std::string& kind,
                     const std::vector<double>& values, const std::string& mesh_ref) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("write_field_csv: cannot open " + path);
    std::fprintf(fp, "# mesh: %s\n", mesh_ref.c_str());
    std::fprintf(fp, "kind,index,value\n");
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(fp, "%s,%zu,%.17g\n", kind.c_str(), i + 1, values[i]);
    std::fclose(fp);
}

} // namespace stagvc
