#include "dampedeb/operators.hpp"

#include "dampedeb/error.hpp"

#include <cmath>
#include <stdexcept>

namespace dampedeb {

Tridiag::Tridiag(int n, double diag, double off)
    : n_(n), diag_(diag), off_(off), upper_(n), inv_pivot_(n) {
    if (n < 1) throw std::invalid_argument("Tridiag: size must be positive");
    double prev_upper = 0.0;
    for (int k = 0; k < n; ++k) {
        const double pivot = diag - (k > 0 ? off * prev_upper : 0.0);
        inv_pivot_[k] = 1.0 / pivot;
        upper_[k] = off * inv_pivot_[k];
        prev_upper = upper_[k];
    }
}

void Tridiag::apply(std::span<const double> in, std::span<double> out) const {
    for (int k = 0; k < n_; ++k) {
        double v = diag_ * in[k];
        if (k > 0) v += off_ * in[k - 1];
        if (k + 1 < n_) v += off_ * in[k + 1];
        out[k] = v;
    }
}

void Tridiag::solve_in_place(std::span<double> x) const {
    x[0] *= inv_pivot_[0];
    for (int k = 1; k < n_; ++k) x[k] = (x[k] - off_ * x[k - 1]) * inv_pivot_[k];
    for (int k = n_ - 2; k >= 0; --k) x[k] -= upper_[k] * x[k + 1];
}

// --- 1D ---------------------------------------------------------------------

namespace {

GridFn1D apply_three_point(const GridFn1D& u, double diag, double off) {
    GridFn1D out(u.grid());
    const int n = u.grid().nodes();
    for (int j = 1; j < n - 1; ++j) out[j] = off * (u[j - 1] + u[j + 1]) + diag * u[j];
    return out;
}

}  // namespace

GridFn1D apply_A(const GridFn1D& u) { return apply_three_point(u, 10.0 / 12.0, 1.0 / 12.0); }

GridFn1D apply_D(const GridFn1D& u) {
    const double h = u.grid().h();
    return apply_three_point(u, -2.0 / (h * h), 1.0 / (h * h));
}

GridFn1D solve_A(const GridFn1D& b) {
    GridFn1D out = b;
    const int m = b.grid().interior();
    Tridiag::compact(m).solve_in_place(out.values().subspan(1, m));
    return out;
}

StepMatrix1D::StepMatrix1D(double a, const Grid1D& grid) : a_(a), grid_(grid) {
    if (!(a > 0.0)) throw std::invalid_argument("StepMatrix1D: a must be positive");
    const int m = grid.interior();
    const double h = grid.h();
    const double ca = 1.0 / 12.0, da = 10.0 / 12.0;       // A
    const double cd = 1.0 / (h * h), dd = -2.0 / (h * h);  // D

    for (auto& b : bands_) b.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const int neighbors = (i > 0) + (i + 1 < m);
        bands_[0][i] = a * (da * da + neighbors * ca * ca) + 0.5 * (dd * dd + neighbors * cd * cd);
        if (i + 1 < m) bands_[1][i] = a * (2.0 * da * ca) + 0.5 * (2.0 * dd * cd);
        if (i + 2 < m) bands_[2][i] = a * ca * ca + 0.5 * cd * cd;
    }

    // Banded Cholesky M = L L^T, L with two sub-diagonals.
    for (auto& c : chol_) c.assign(m, 0.0);
    auto& l0 = chol_[0];
    auto& l1 = chol_[1];
    auto& l2 = chol_[2];
    for (int i = 0; i < m; ++i) {
        if (i >= 2) l2[i] = bands_[2][i - 2] / l0[i - 2];
        if (i >= 1) l1[i] = (bands_[1][i - 1] - (i >= 2 ? l2[i] * l1[i - 1] : 0.0)) / l0[i - 1];
        const double pivot = bands_[0][i] - l1[i] * l1[i] - l2[i] * l2[i];
        if (!(pivot > 0.0)) throw SolverError("step matrix is not positive definite", pivot);
        l0[i] = std::sqrt(pivot);
    }
}

GridFn1D StepMatrix1D::apply(const GridFn1D& u) const {
    if (!(u.grid() == grid_)) throw GridMismatch("StepMatrix1D::apply: grid mismatch");
    GridFn1D out(grid_);
    const int m = grid_.interior();
    auto in = u.values().subspan(1, m);
    auto res = out.values().subspan(1, m);
    for (int i = 0; i < m; ++i) {
        double v = bands_[0][i] * in[i];
        if (i >= 1) v += bands_[1][i - 1] * in[i - 1];
        if (i >= 2) v += bands_[2][i - 2] * in[i - 2];
        if (i + 1 < m) v += bands_[1][i] * in[i + 1];
        if (i + 2 < m) v += bands_[2][i] * in[i + 2];
        res[i] = v;
    }
    return out;
}

GridFn1D StepMatrix1D::solve(const GridFn1D& rhs) const {
    if (!(rhs.grid() == grid_)) throw GridMismatch("StepMatrix1D::solve: grid mismatch");
    GridFn1D out = rhs;
    out.clamp_boundary();
    const int m = grid_.interior();
    auto x = out.values().subspan(1, m);
    const auto& l0 = chol_[0];
    const auto& l1 = chol_[1];
    const auto& l2 = chol_[2];
    for (int i = 0; i < m; ++i) {
        double v = x[i];
        if (i >= 1) v -= l1[i] * x[i - 1];
        if (i >= 2) v -= l2[i] * x[i - 2];
        x[i] = v / l0[i];
    }
    for (int i = m - 1; i >= 0; --i) {
        double v = x[i];
        if (i + 1 < m) v -= l1[i + 1] * x[i + 1];
        if (i + 2 < m) v -= l2[i + 2] * x[i + 2];
        x[i] = v / l0[i];
    }
    return out;
}

StepMatrix1D build_step_matrix_1d(double a, const Grid1D& grid) { return StepMatrix1D(a, grid); }

GridFn1D solve_step_1d(const StepMatrix1D& m, const GridFn1D& rhs) { return m.solve(rhs); }

// --- 2D ---------------------------------------------------------------------

namespace {

constexpr double compact_diag = 10.0 / 12.0;
constexpr double compact_off = 1.0 / 12.0;

// out(i, j) = off (in(i-1, j) + in(i+1, j)) + diag in(i, j) on interior nodes.
void sweep_x(const double* in, double* out, int nx, int ny, double diag, double off) {
    for (int j = 0; j < ny; ++j) out[j] = out[(nx - 1) * ny + j] = 0.0;
    for (int i = 1; i < nx - 1; ++i) {
        const double* up = in + (i - 1) * ny;
        const double* mid = in + i * ny;
        const double* down = in + (i + 1) * ny;
        double* o = out + i * ny;
        o[0] = o[ny - 1] = 0.0;
        for (int j = 1; j < ny - 1; ++j) o[j] = off * (up[j] + down[j]) + diag * mid[j];
    }
}

void sweep_y(const double* in, double* out, int nx, int ny, double diag, double off) {
    for (int j = 0; j < ny; ++j) out[j] = out[(nx - 1) * ny + j] = 0.0;
    for (int i = 1; i < nx - 1; ++i) {
        const double* r = in + i * ny;
        double* o = out + i * ny;
        o[0] = o[ny - 1] = 0.0;
        for (int j = 1; j < ny - 1; ++j) o[j] = off * (r[j - 1] + r[j + 1]) + diag * r[j];
    }
}

// Thomas elimination along x for every interior column j at once.
void solve_x_in_place(double* data, int nx, int ny, const Tridiag& t) {
    const auto& up = t.upper();
    const auto& inv = t.inv_pivot();
    const double off = t.off();
    const int m = nx - 2;
    {
        double* r = data + ny;
        for (int j = 1; j < ny - 1; ++j) r[j] *= inv[0];
    }
    for (int k = 1; k < m; ++k) {
        double* r = data + (k + 1) * ny;
        const double* p = data + k * ny;
        for (int j = 1; j < ny - 1; ++j) r[j] = (r[j] - off * p[j]) * inv[k];
    }
    for (int k = m - 2; k >= 0; --k) {
        double* r = data + (k + 1) * ny;
        const double* n = data + (k + 2) * ny;
        for (int j = 1; j < ny - 1; ++j) r[j] -= up[k] * n[j];
    }
}

void solve_y_in_place(double* data, int nx, int ny, const Tridiag& t) {
    for (int i = 1; i < nx - 1; ++i) t.solve_in_place(std::span<double>(data + i * ny + 1, ny - 2));
}

GridFn2D sweep(const GridFn2D& u, bool along_x, double diag, double off) {
    GridFn2D out(u.grid());
    const auto& g = u.grid();
    if (along_x)
        sweep_x(u.values().data(), out.values().data(), g.nx(), g.ny(), diag, off);
    else
        sweep_y(u.values().data(), out.values().data(), g.nx(), g.ny(), diag, off);
    return out;
}

// Diagonal of the product of two constant symmetric tridiagonals on m unknowns.
double product_diag(double d1, double o1, double d2, double o2, int k, int m) {
    const int neighbors = (k > 0) + (k + 1 < m);
    return d1 * d2 + neighbors * o1 * o2;
}

}  // namespace

GridFn2D apply_Ax(const GridFn2D& u) { return sweep(u, true, compact_diag, compact_off); }
GridFn2D apply_By(const GridFn2D& u) { return sweep(u, false, compact_diag, compact_off); }

GridFn2D apply_Dxx(const GridFn2D& u) {
    const double h = u.grid().h1();
    return sweep(u, true, -2.0 / (h * h), 1.0 / (h * h));
}

GridFn2D apply_Dyy(const GridFn2D& u) {
    const double h = u.grid().h2();
    return sweep(u, false, -2.0 / (h * h), 1.0 / (h * h));
}

GridFn2D apply_H(const GridFn2D& u) { return apply_By(apply_Ax(u)); }

GridFn2D apply_Phi(const GridFn2D& u) {
    GridFn2D out = apply_By(apply_Dxx(u));
    out += apply_Ax(apply_Dyy(u));
    return out;
}

GridFn2D solve_H(const GridFn2D& b) {
    const auto& g = b.grid();
    GridFn2D out = b;
    out.clamp_boundary();
    solve_x_in_place(out.values().data(), g.nx(), g.ny(), Tridiag::compact(g.nx() - 2));
    solve_y_in_place(out.values().data(), g.nx(), g.ny(), Tridiag::compact(g.ny() - 2));
    return out;
}

StepOperator2D::StepOperator2D(double a, const Grid2D& grid) : a_(a), grid_(grid) {
    if (!(a > 0.0)) throw std::invalid_argument("StepOperator2D: a must be positive");
    const std::size_t size = static_cast<std::size_t>(grid.nx()) * grid.ny();
    s1_.assign(size, 0.0);
    s2_.assign(size, 0.0);
    s3_.assign(size, 0.0);
    diagonal_.assign(size, 1.0);

    const int mx = grid.nx() - 2, my = grid.ny() - 2;
    const double cx = 1.0 / (grid.h1() * grid.h1());
    const double cy = 1.0 / (grid.h2() * grid.h2());
    for (int i = 1; i <= mx; ++i) {
        const int k = i - 1;
        const double a2 = product_diag(compact_diag, compact_off, compact_diag, compact_off, k, mx);
        const double d2 = product_diag(-2.0 * cx, cx, -2.0 * cx, cx, k, mx);
        const double ad = product_diag(compact_diag, compact_off, -2.0 * cx, cx, k, mx);
        for (int j = 1; j <= my; ++j) {
            const int l = j - 1;
            const double b2 = product_diag(compact_diag, compact_off, compact_diag, compact_off, l, my);
            const double e2 = product_diag(-2.0 * cy, cy, -2.0 * cy, cy, l, my);
            const double be = product_diag(compact_diag, compact_off, -2.0 * cy, cy, l, my);
            diagonal_[static_cast<std::size_t>(i) * grid.ny() + j] =
                a * a2 * b2 + 0.5 * (d2 * b2 + 2.0 * ad * be + a2 * e2);
        }
    }
}

void StepOperator2D::apply(std::span<const double> in, std::span<double> out) const {
    const int nx = grid_.nx(), ny = grid_.ny();
    const double cx = 1.0 / (grid_.h1() * grid_.h1());
    const double cy = 1.0 / (grid_.h2() * grid_.h2());
    double* s1 = s1_.data();
    double* s2 = s2_.data();
    double* s3 = s3_.data();
    double* o = out.data();
    const std::size_t size = s1_.size();

    // H^2 u = A B A B u
    sweep_x(in.data(), s1, nx, ny, compact_diag, compact_off);
    sweep_y(s1, s2, nx, ny, compact_diag, compact_off);
    sweep_x(s2, s1, nx, ny, compact_diag, compact_off);
    sweep_y(s1, o, nx, ny, compact_diag, compact_off);
    for (std::size_t k = 0; k < size; ++k) o[k] *= a_;

    // Phi u into s3, then Phi (Phi u) accumulated into out.
    sweep_x(in.data(), s1, nx, ny, -2.0 * cx, cx);
    sweep_y(s1, s3, nx, ny, compact_diag, compact_off);
    sweep_y(in.data(), s1, nx, ny, -2.0 * cy, cy);
    sweep_x(s1, s2, nx, ny, compact_diag, compact_off);
    for (std::size_t k = 0; k < size; ++k) s3[k] += s2[k];

    sweep_x(s3, s1, nx, ny, -2.0 * cx, cx);
    sweep_y(s1, s2, nx, ny, compact_diag, compact_off);
    for (std::size_t k = 0; k < size; ++k) o[k] += 0.5 * s2[k];
    sweep_y(s3, s1, nx, ny, -2.0 * cy, cy);
    sweep_x(s1, s2, nx, ny, compact_diag, compact_off);
    for (std::size_t k = 0; k < size; ++k) o[k] += 0.5 * s2[k];
}

GridFn2D StepOperator2D::apply(const GridFn2D& u) const {
    if (!(u.grid() == grid_)) throw GridMismatch("StepOperator2D::apply: grid mismatch");
    GridFn2D out(grid_);
    apply(u.values(), out.values());
    return out;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

}  // namespace

GridFn2D solve_step_2d(double a, const GridFn2D& rhs, const CgOptions& options, const GridFn2D* guess,
                       CgStats* stats) {
    if (!(options.tol > 0.0)) throw std::invalid_argument("solve_step_2d: tol must be positive");
    const Grid2D& grid = rhs.grid();
    if (guess != nullptr && !(guess->grid() == grid)) throw GridMismatch("solve_step_2d: guess grid mismatch");

    StepOperator2D op(a, grid);
    GridFn2D b = rhs;
    b.clamp_boundary();
    GridFn2D x = guess != nullptr ? *guess : GridFn2D(grid);
    x.clamp_boundary();

    const std::size_t size = b.values().size();
    std::vector<double> r(size), z(size), p(size), q(size);
    const auto& diag = op.diagonal();

    const double b_norm = std::sqrt(dot(b.values(), b.values()));
    if (stats != nullptr) *stats = {};
    if (b_norm == 0.0) return GridFn2D(grid);

    op.apply(x.values(), q);
    auto xv = x.values();
    auto bv = b.values();
    for (std::size_t k = 0; k < size; ++k) r[k] = bv[k] - q[k];

    const int cap = options.max_iterations > 0 ? options.max_iterations : 10 * grid.interior();
    double r_norm = std::sqrt(dot(r, r));
    int it = 0;
    if (r_norm > options.tol * b_norm) {
        for (std::size_t k = 0; k < size; ++k) p[k] = z[k] = r[k] / diag[k];
        double rz = dot(r, z);
        for (;;) {
            if (it >= cap)
                throw SolverError("conjugate gradient did not converge within " + std::to_string(cap) +
                                      " iterations (relative residual " + std::to_string(r_norm / b_norm) + ")",
                                  r_norm / b_norm);
            op.apply(p, q);
            const double alpha = rz / dot(p, q);
            for (std::size_t k = 0; k < size; ++k) {
                xv[k] += alpha * p[k];
                r[k] -= alpha * q[k];
            }
            ++it;
            r_norm = std::sqrt(dot(r, r));
            if (r_norm <= options.tol * b_norm) break;
            for (std::size_t k = 0; k < size; ++k) z[k] = r[k] / diag[k];
            const double rz_next = dot(r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t k = 0; k < size; ++k) p[k] = z[k] + beta * p[k];
        }
    }
    if (stats != nullptr) *stats = {it, r_norm / b_norm};
    x.clamp_boundary();
    return x;
}

}  // namespace dampedeb
