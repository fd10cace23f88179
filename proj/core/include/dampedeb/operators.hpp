#pragma once

#include "dampedeb/mesh.hpp"

#include <span>
#include <vector>

namespace dampedeb {

/// Symmetric constant-coefficient tridiagonal matrix tridiag(off, diag, off)
/// on n unknowns with Dirichlet truncation, plus its cached Thomas factors.
///
/// The compact operator (1, 10, 1)/12 is strictly diagonally dominant, so the
/// elimination runs without pivoting.
class Tridiag {
public:
    Tridiag(int n, double diag, double off);

    /// (u_{j-1} + 10 u_j + u_{j+1}) / 12
    static Tridiag compact(int n) { return Tridiag(n, 10.0 / 12.0, 1.0 / 12.0); }
    /// (u_{j-1} - 2 u_j + u_{j+1}) / h^2
    static Tridiag second_difference(int n, double h) { return Tridiag(n, -2.0 / (h * h), 1.0 / (h * h)); }

    int size() const noexcept { return n_; }
    double diag() const noexcept { return diag_; }
    double off() const noexcept { return off_; }

    /// out = T in, for contiguous vectors of length size().
    void apply(std::span<const double> in, std::span<double> out) const;
    /// Overwrites x with T^{-1} x.
    void solve_in_place(std::span<double> x) const;

    /// Thomas multipliers; exposed for batched sweeps.
    const std::vector<double>& upper() const noexcept { return upper_; }
    const std::vector<double>& inv_pivot() const noexcept { return inv_pivot_; }

private:
    int n_;
    double diag_, off_;
    std::vector<double> upper_;      // c'_k
    std::vector<double> inv_pivot_;  // 1 / (b - a c'_{k-1})
};

// --- 1D ---------------------------------------------------------------------

/// Compact averaging operator on interior nodes; boundary stays 0.
GridFn1D apply_A(const GridFn1D& u);
/// Second difference (u_{j+1} - 2u_j + u_{j-1}) / h^2 on interior nodes.
GridFn1D apply_D(const GridFn1D& u);
/// Inverse of apply_A.
GridFn1D solve_A(const GridFn1D& b);

/// a A^2 + (1/2) D^2 over interior nodes, stored as the main diagonal and two
/// super-diagonals together with its banded Cholesky factor.
class StepMatrix1D {
public:
    StepMatrix1D(double a, const Grid1D& grid);

    double a() const noexcept { return a_; }
    const Grid1D& grid() const noexcept { return grid_; }

    /// Banded matrix-vector product on the interior.
    GridFn1D apply(const GridFn1D& u) const;
    GridFn1D solve(const GridFn1D& rhs) const;

    std::span<const double> band(int k) const noexcept { return bands_[k]; }

private:
    double a_;
    Grid1D grid_;
    std::vector<double> bands_[3];   // main, first and second super-diagonal
    std::vector<double> chol_[3];    // L diagonal, first and second sub-diagonal
};

StepMatrix1D build_step_matrix_1d(double a, const Grid1D& grid);
GridFn1D solve_step_1d(const StepMatrix1D& m, const GridFn1D& rhs);

// --- 2D ---------------------------------------------------------------------

/// Compact operator along x (A) and along y (B).
GridFn2D apply_Ax(const GridFn2D& u);
GridFn2D apply_By(const GridFn2D& u);
/// Second differences along x and along y.
GridFn2D apply_Dxx(const GridFn2D& u);
GridFn2D apply_Dyy(const GridFn2D& u);

/// H = A B
GridFn2D apply_H(const GridFn2D& u);
/// Phi = B Dxx + A Dyy
GridFn2D apply_Phi(const GridFn2D& u);
/// Inverse of H: tridiagonal sweeps along x, then along y.
GridFn2D solve_H(const GridFn2D& b);

/// Matrix-free u -> a H^2 u + (1/2) Phi^2 u with a Jacobi diagonal.
/// Owns scratch space, so one instance must not be shared between threads.
class StepOperator2D {
public:
    StepOperator2D(double a, const Grid2D& grid);

    double a() const noexcept { return a_; }
    const Grid2D& grid() const noexcept { return grid_; }

    /// Raw form over full closed-grid arrays (boundary entries of `out` set to 0).
    void apply(std::span<const double> in, std::span<double> out) const;
    GridFn2D apply(const GridFn2D& u) const;

    /// Operator diagonal over the closed grid; boundary entries are 1.
    const std::vector<double>& diagonal() const noexcept { return diagonal_; }

private:
    double a_;
    Grid2D grid_;
    std::vector<double> diagonal_;
    mutable std::vector<double> s1_, s2_, s3_;
};

struct CgOptions {
    double tol = 1e-12;
    /// 0 selects 10 * interior dimension.
    int max_iterations = 0;
};

struct CgStats {
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Solves (a H^2 + (1/2) Phi^2) u = rhs by Jacobi-preconditioned conjugate
/// gradients, stopping when ||r|| <= tol ||rhs||. Throws SolverError past the
/// iteration cap. `guess`, when given, seeds the iteration.
GridFn2D solve_step_2d(double a, const GridFn2D& rhs, const CgOptions& options = {},
                       const GridFn2D* guess = nullptr, CgStats* stats = nullptr);

}  // namespace dampedeb
