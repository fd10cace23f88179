#pragma once

#include "dampedeb/expr.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dampedeb {

/// Uniform mesh x_j = j h on [0, 1] with 2J intervals, h = 1/(2J).
class Grid1D {
public:
    /// Throws std::invalid_argument unless J >= 2.
    explicit Grid1D(int J);

    int J() const noexcept { return J_; }
    double h() const noexcept { return h_; }
    /// Node count 2J + 1, boundary included.
    int nodes() const noexcept { return 2 * J_ + 1; }
    int interior() const noexcept { return 2 * J_ - 1; }
    double x(int j) const noexcept { return j * h_; }

    bool operator==(const Grid1D&) const = default;

private:
    int J_;
    double h_;
};

/// Tensor mesh on the unit square with 2J1 x 2J2 cells.
class Grid2D {
public:
    Grid2D(int J1, int J2);

    int J1() const noexcept { return J1_; }
    int J2() const noexcept { return J2_; }
    double h1() const noexcept { return h1_; }
    double h2() const noexcept { return h2_; }
    int nx() const noexcept { return 2 * J1_ + 1; }
    int ny() const noexcept { return 2 * J2_ + 1; }
    int interior() const noexcept { return (2 * J1_ - 1) * (2 * J2_ - 1); }
    double x(int i) const noexcept { return i * h1_; }
    double y(int j) const noexcept { return j * h2_; }

    bool operator==(const Grid2D&) const = default;

private:
    int J1_, J2_;
    double h1_, h2_;
};

/// t_n = n tau, tau = T/(N+1), so the last level n = N+1 lands on T.
class TimeGrid {
public:
    TimeGrid(int N, double T);

    /// Grid with `steps` uniform steps in total, i.e. N = steps - 1.
    static TimeGrid with_steps(int steps, double T) { return TimeGrid(steps - 1, T); }
    int steps() const noexcept { return N_ + 1; }

    int N() const noexcept { return N_; }
    double T() const noexcept { return T_; }
    double tau() const noexcept { return tau_; }
    double t(int n) const noexcept { return n == N_ + 1 ? T_ : n * tau_; }

private:
    int N_;
    double T_;
    double tau_;
};

/// Nodal field on a Grid1D, stored on the closed grid. Boundary entries are
/// kept at zero by every library routine.
class GridFn1D {
public:
    explicit GridFn1D(const Grid1D& grid) : grid_(grid), values_(grid.nodes(), 0.0) {}

    const Grid1D& grid() const noexcept { return grid_; }
    double& operator[](int j) { return values_[j]; }
    double operator[](int j) const { return values_[j]; }
    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    void clamp_boundary() noexcept { values_.front() = values_.back() = 0.0; }

    GridFn1D& operator+=(const GridFn1D& o);
    GridFn1D& operator-=(const GridFn1D& o);
    GridFn1D& operator*=(double s) noexcept;
    /// this += s * o
    GridFn1D& axpy(double s, const GridFn1D& o);

    friend GridFn1D operator+(GridFn1D a, const GridFn1D& b) { return a += b; }
    friend GridFn1D operator-(GridFn1D a, const GridFn1D& b) { return a -= b; }
    friend GridFn1D operator*(double s, GridFn1D a) { return a *= s; }

private:
    Grid1D grid_;
    std::vector<double> values_;
};

/// Nodal field on a Grid2D, row-major in i (x index): value(i, j) = data[i * ny + j].
class GridFn2D {
public:
    explicit GridFn2D(const Grid2D& grid)
        : grid_(grid), values_(static_cast<std::size_t>(grid.nx()) * grid.ny(), 0.0) {}

    const Grid2D& grid() const noexcept { return grid_; }
    double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.ny() + j]; }
    double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.ny() + j]; }
    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    void clamp_boundary() noexcept;

    GridFn2D& operator+=(const GridFn2D& o);
    GridFn2D& operator-=(const GridFn2D& o);
    GridFn2D& operator*=(double s) noexcept;
    GridFn2D& axpy(double s, const GridFn2D& o);

    friend GridFn2D operator+(GridFn2D a, const GridFn2D& b) { return a += b; }
    friend GridFn2D operator-(GridFn2D a, const GridFn2D& b) { return a -= b; }
    friend GridFn2D operator*(double s, GridFn2D a) { return a *= s; }

private:
    Grid2D grid_;
    std::vector<double> values_;
};

enum class NormKind { L2, Inf, A, B, E, F };

const char* to_string(NormKind kind);

/// h * sum over interior nodes of u v.
double inner(const GridFn1D& u, const GridFn1D& v);
/// h1 h2 * sum over interior nodes of u v.
double inner(const GridFn2D& u, const GridFn2D& v);

/// L2, Inf, A, B. E and F are 2D-only and throw GridMismatch here.
double norm(const GridFn1D& u, NormKind kind = NormKind::L2);
/// L2, Inf, E, F. A and B are 1D-only and throw GridMismatch here.
double norm(const GridFn2D& u, NormKind kind = NormKind::L2);

/// Nodal samples of f(x) (1D) with the boundary forced to zero.
GridFn1D sample(const Grid1D& grid, const std::function<double(double)>& f);
/// Samples of expr(x, 0, t); a DomainError is rethrown naming the node.
GridFn1D sample(const Grid1D& grid, const expr::Expression& f, double t);

GridFn2D sample(const Grid2D& grid, const std::function<double(double, double)>& f);
GridFn2D sample(const Grid2D& grid, const expr::Expression& f, double t);

}  // namespace dampedeb
