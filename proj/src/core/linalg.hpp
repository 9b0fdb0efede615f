#pragma once

#include <functional>
#include <string>
#include <vector>

namespace stagvc {

struct Triplet {
    int row;
    int col;
    double value;
};

/// Compressed sparse rows; explicit zeros stripped at build time.
struct CsrMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_ptr;
    std::vector<int> col_idx;
    std::vector<double> values;

    bool empty() const { return rows == 0; }
    std::vector<double> apply(const std::vector<double>& x) const;
    /// y = A^T x
    std::vector<double> apply_transposed(const std::vector<double>& x) const;
    std::vector<double> diagonal() const;
    int nnz() const { return static_cast<int>(values.size()); }
};

CsrMatrix csr_from_triplets(int rows, int cols, std::vector<Triplet> triplets);

using ApplyFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;

/// Symmetric sparse system with an optional rank-one affine constraint
/// (weights w with w.x = 0, used for zero-mean gauges of singular
/// Neumann-type operators).
struct SparseSystem {
    ApplyFn apply;                      // y = A x, A symmetric PSD on the subspace
    int n = 0;
    std::vector<double> rhs;
    std::vector<double> jacobi;         // diag(A); empty = identity preconditioner
    std::vector<double> constraint;     // weights w; empty = unconstrained
    double tol = 1e-10;                 // relative residual target
    int max_iter = 0;                   // 0 = 10 n
    std::vector<double> reference_solution;  // when set, logs the A-norm error
};

struct SolveStats {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
    std::vector<double> residual_history;
    std::vector<double> error_energy_history;  // |x_k - x*|_A when requested
};

/// Jacobi-preconditioned conjugate gradients with deterministic reduction
/// order; constrained systems project every iterate onto {w.x = 0}.
/// On non-convergence returns the best iterate with converged=false.
std::vector<double> solve_cg(const SparseSystem& sys, SolveStats* stats = nullptr);

/// |<Ax,y> - <x,Ay>| / scale on a few fixed probe vectors.
double symmetry_defect(const ApplyFn& apply, int n);

/// Throws if the operator fails the probe-based symmetry check.
void require_symmetric(const ApplyFn& apply, int n, const char* what);

} // namespace stagvc
