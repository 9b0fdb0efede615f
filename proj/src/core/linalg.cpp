#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stagvc {

std::vector<double> CsrMatrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(rows, 0.0);
    for (int r = 0; r < rows; ++r) {
        double s = 0.0;
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += values[k] * x[col_idx[k]];
        y[r] = s;
    }
    return y;
}

std::vector<double> CsrMatrix::apply_transposed(const std::vector<double>& x) const {
    std::vector<double> y(cols, 0.0);
    for (int r = 0; r < rows; ++r)
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) y[col_idx[k]] += values[k] * x[r];
    return y;
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(rows, 0.0);
    for (int r = 0; r < rows; ++r)
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
            if (col_idx[k] == r) d[r] += values[k];
    return d;
}

CsrMatrix csr_from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(rows + 1, 0);
    std::size_t i = 0;
    while (i < triplets.size()) {
        std::size_t j = i;
        double s = 0.0;
        while (j < triplets.size() && triplets[j].row == triplets[i].row &&
               triplets[j].col == triplets[i].col)
            s += triplets[j++].value;
        if (s != 0.0) {
            m.col_idx.push_back(triplets[i].col);
            m.values.push_back(s);
            m.row_ptr[triplets[i].row + 1]++;
        }
        i = j;
    }
    for (int r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
    return m;
}

namespace {

double dot_v(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void project_out(std::vector<double>& x, const std::vector<double>& w, double w2) {
    if (w.empty()) return;
    double c = dot_v(w, x) / w2;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * w[i];
}

} // namespace

std::vector<double> solve_cg(const SparseSystem& sys, SolveStats* stats) {
    const int n = sys.n;
    const int max_iter = sys.max_iter > 0 ? sys.max_iter : 10 * n;
    double w2 = sys.constraint.empty() ? 1.0 : dot_v(sys.constraint, sys.constraint);

    std::vector<double> b = sys.rhs;
    project_out(b, sys.constraint, w2);

    std::vector<double> x(n, 0.0), r = b, z(n), p(n), Ap(n);
    auto precondition = [&](const std::vector<double>& rr, std::vector<double>& zz) {
        if (sys.jacobi.empty()) {
            zz = rr;
        } else {
            for (int i = 0; i < n; ++i) zz[i] = rr[i] / sys.jacobi[i];
        }
    };

    double bnorm = std::sqrt(dot_v(b, b));
    SolveStats st;
    if (bnorm == 0.0) {
        st.converged = true;
        if (stats) *stats = st;
        return x;
    }

    precondition(r, z);
    project_out(z, sys.constraint, w2);
    p = z;
    double rz = dot_v(r, z);
    std::vector<double> best_x = x;
    double best_res = 1.0;

    for (int it = 0; it < max_iter; ++it) {
        sys.apply(p, Ap);
        project_out(Ap, sys.constraint, w2);
        double pAp = dot_v(p, Ap);
        if (pAp <= 0.0) break;  // lost positive definiteness
        double alpha = rz / pAp;
        for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (int i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
        double res = std::sqrt(dot_v(r, r)) / bnorm;
        st.residual_history.push_back(res);
        if (!sys.reference_solution.empty()) {
            std::vector<double> e(n), Ae(n);
            for (int i = 0; i < n; ++i) e[i] = x[i] - sys.reference_solution[i];
            project_out(e, sys.constraint, w2);
            sys.apply(e, Ae);
            st.error_energy_history.push_back(std::sqrt(std::max(0.0, dot_v(e, Ae))));
        }
        st.iterations = it + 1;
        if (res < best_res) {
            best_res = res;
            best_x = x;
        }
        if (res <= sys.tol) {
            st.converged = true;
            break;
        }
        precondition(r, z);
        project_out(z, sys.constraint, w2);
        double rz_new = dot_v(r, z);
        double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    st.rel_residual = best_res;
    if (!st.converged) x = best_x;
    project_out(x, sys.constraint, w2);
    if (stats) *stats = st;
    return x;
}

double symmetry_defect(const ApplyFn& apply, int n) {
    // fixed pseudo-random probes
    auto probe = [&](unsigned long long seed) {
        std::vector<double> v(n);
        unsigned long long s = seed;
        for (int i = 0; i < n; ++i) {
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            v[i] = static_cast<double>((s >> 11) % 100000) / 100000.0 - 0.5;
        }
        return v;
    };
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        std::vector<double> x = probe(17 + k), y = probe(101 + k), Ax(n), Ay(n);
        apply(x, Ax);
        apply(y, Ay);
        double a = dot_v(Ax, y), b = dot_v(x, Ay);
        double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        worst = std::max(worst, std::abs(a - b) / scale);
    }
    return worst;
}

void require_symmetric(const ApplyFn& apply, int n, const char* what) {
    double d = symmetry_defect(apply, n);
    if (d > 1e-10)
        throw std::runtime_error(std::string(what) +
                                 ": operator fails symmetry probe, defect " + std::to_string(d));
}

} // namespace stagvc
