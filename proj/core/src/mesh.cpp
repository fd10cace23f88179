#include "dampedeb/mesh.hpp"

#include "dampedeb/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dampedeb {

Grid1D::Grid1D(int J) : J_(J), h_(0.0) {
    if (J < 2) throw std::invalid_argument("Grid1D: J must be >= 2, got " + std::to_string(J));
    h_ = 1.0 / (2.0 * J);
}

Grid2D::Grid2D(int J1, int J2) : J1_(J1), J2_(J2), h1_(0.0), h2_(0.0) {
    if (J1 < 2 || J2 < 2)
        throw std::invalid_argument("Grid2D: J1, J2 must be >= 2, got " + std::to_string(J1) + ", " +
                                    std::to_string(J2));
    h1_ = 1.0 / (2.0 * J1);
    h2_ = 1.0 / (2.0 * J2);
}

TimeGrid::TimeGrid(int N, double T) : N_(N), T_(T), tau_(0.0) {
    if (N < 1) throw std::invalid_argument("TimeGrid: N must be >= 1");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("TimeGrid: T must be positive");
    tau_ = T / (N + 1.0);
}

namespace {

template<class Fn>
void require_same(const Fn& a, const Fn& b) {
    if (!(a.grid() == b.grid())) throw GridMismatch("grid functions live on different grids");
}

}  // namespace

GridFn1D& GridFn1D::operator+=(const GridFn1D& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

GridFn1D& GridFn1D::operator-=(const GridFn1D& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

GridFn1D& GridFn1D::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

GridFn1D& GridFn1D::axpy(double s, const GridFn1D& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += s * o.values_[k];
    return *this;
}

void GridFn2D::clamp_boundary() noexcept {
    const int nx = grid_.nx(), ny = grid_.ny();
    for (int j = 0; j < ny; ++j) (*this)(0, j) = (*this)(nx - 1, j) = 0.0;
    for (int i = 0; i < nx; ++i) (*this)(i, 0) = (*this)(i, ny - 1) = 0.0;
}

GridFn2D& GridFn2D::operator+=(const GridFn2D& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

GridFn2D& GridFn2D::operator-=(const GridFn2D& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

GridFn2D& GridFn2D::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

GridFn2D& GridFn2D::axpy(double s, const GridFn2D& o) {
    require_same(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += s * o.values_[k];
    return *this;
}

const char* to_string(NormKind kind) {
    switch (kind) {
        case NormKind::L2: return "L2";
        case NormKind::Inf: return "Inf";
        case NormKind::A: return "A";
        case NormKind::B: return "B";
        case NormKind::E: return "E";
        case NormKind::F: return "F";
    }
    return "?";
}

double inner(const GridFn1D& u, const GridFn1D& v) {
    require_same(u, v);
    const int n = u.grid().nodes();
    double sum = 0.0;
    for (int j = 1; j < n - 1; ++j) sum += u[j] * v[j];
    return u.grid().h() * sum;
}

double inner(const GridFn2D& u, const GridFn2D& v) {
    require_same(u, v);
    const auto& g = u.grid();
    double sum = 0.0;
    for (int i = 1; i < g.nx() - 1; ++i)
        for (int j = 1; j < g.ny() - 1; ++j) sum += u(i, j) * v(i, j);
    return g.h1() * g.h2() * sum;
}

namespace {

// sum_{j=1}^{J} u_{2j-1}^2
double odd_sum_squares(const GridFn1D& u) {
    double sum = 0.0;
    for (int j = 1; j <= u.grid().J(); ++j) sum += u[2 * j - 1] * u[2 * j - 1];
    return sum;
}

double e_norm_squared(const GridFn2D& u) {
    const auto& g = u.grid();
    double sum = 0.0;
    for (int i = 1; i <= g.J1(); ++i) {
        for (int j = 1; j <= g.J2(); ++j) {
            const double a = u(2 * i - 2, 2 * j - 1);
            const double b = u(2 * i - 1, 2 * j - 2);
            const double c = u(2 * i - 1, 2 * j - 1);
            sum += a * a + b * b + 3.0 * c * c;
        }
    }
    return (4.0 / 9.0) * g.h1() * g.h2() * sum;
}

}  // namespace

double norm(const GridFn1D& u, NormKind kind) {
    switch (kind) {
        case NormKind::L2: return std::sqrt(inner(u, u));
        case NormKind::Inf: {
            double m = 0.0;
            for (int j = 1; j < u.grid().nodes() - 1; ++j) m = std::max(m, std::abs(u[j]));
            return m;
        }
        case NormKind::A: return std::sqrt(2.0 * u.grid().h() * odd_sum_squares(u));
        case NormKind::B: {
            const double l2 = inner(u, u);
            const double a2 = 2.0 * u.grid().h() * odd_sum_squares(u);
            return std::sqrt((2.0 / 3.0) * l2 + (1.0 / 3.0) * a2);
        }
        case NormKind::E:
        case NormKind::F: break;
    }
    throw GridMismatch(std::string("norm kind ") + to_string(kind) + " is defined only in 2D");
}

double norm(const GridFn2D& u, NormKind kind) {
    switch (kind) {
        case NormKind::L2: return std::sqrt(inner(u, u));
        case NormKind::Inf: {
            const auto& g = u.grid();
            double m = 0.0;
            for (int i = 1; i < g.nx() - 1; ++i)
                for (int j = 1; j < g.ny() - 1; ++j) m = std::max(m, std::abs(u(i, j)));
            return m;
        }
        case NormKind::E: return std::sqrt(e_norm_squared(u));
        case NormKind::F: return std::sqrt((4.0 / 9.0) * inner(u, u) + e_norm_squared(u));
        case NormKind::A:
        case NormKind::B: break;
    }
    throw GridMismatch(std::string("norm kind ") + to_string(kind) + " is defined only in 1D");
}

GridFn1D sample(const Grid1D& grid, const std::function<double(double)>& f) {
    GridFn1D out(grid);
    for (int j = 1; j < grid.nodes() - 1; ++j) out[j] = f(grid.x(j));
    return out;
}

GridFn1D sample(const Grid1D& grid, const expr::Expression& f, double t) {
    GridFn1D out(grid);
    for (int j = 1; j < grid.nodes() - 1; ++j) {
        try {
            out[j] = f.eval(grid.x(j), 0.0, t);
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " at node j=" + std::to_string(j) +
                              " (x=" + std::to_string(grid.x(j)) + ", t=" + std::to_string(t) + ")");
        }
    }
    return out;
}

GridFn2D sample(const Grid2D& grid, const std::function<double(double, double)>& f) {
    GridFn2D out(grid);
    for (int i = 1; i < grid.nx() - 1; ++i)
        for (int j = 1; j < grid.ny() - 1; ++j) out(i, j) = f(grid.x(i), grid.y(j));
    return out;
}

GridFn2D sample(const Grid2D& grid, const expr::Expression& f, double t) {
    GridFn2D out(grid);
    for (int i = 1; i < grid.nx() - 1; ++i) {
        for (int j = 1; j < grid.ny() - 1; ++j) {
            try {
                out(i, j) = f.eval(grid.x(i), grid.y(j), t);
            } catch (const DomainError& e) {
                throw DomainError(std::string(e.what()) + " at node (i=" + std::to_string(i) +
                                  ", j=" + std::to_string(j) + ", t=" + std::to_string(t) + ")");
            }
        }
    }
    return out;
}

}  // namespace dampedeb
