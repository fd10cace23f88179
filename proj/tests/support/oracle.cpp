#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace dampedeb::testing {

Eigen::VectorXd interior(const GridFn1D& u) {
    const int m = u.grid().interior();
    Eigen::VectorXd v(m);
    for (int j = 0; j < m; ++j) v[j] = u[j + 1];
    return v;
}

Eigen::VectorXd interior(const GridFn2D& u) {
    const auto& g = u.grid();
    const int mx = g.nx() - 2, my = g.ny() - 2;
    Eigen::VectorXd v(mx * my);
    for (int i = 0; i < mx; ++i)
        for (int j = 0; j < my; ++j) v[i * my + j] = u(i + 1, j + 1);
    return v;
}

GridFn1D from_interior(const Grid1D& grid, const Eigen::VectorXd& v) {
    GridFn1D u(grid);
    for (int j = 0; j < grid.interior(); ++j) u[j + 1] = v[j];
    return u;
}

GridFn2D from_interior(const Grid2D& grid, const Eigen::VectorXd& v) {
    GridFn2D u(grid);
    const int mx = grid.nx() - 2, my = grid.ny() - 2;
    for (int i = 0; i < mx; ++i)
        for (int j = 0; j < my; ++j) u(i + 1, j + 1) = v[i * my + j];
    return u;
}

Eigen::MatrixXd dense_compact(int m) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
        A(k, k) = 10.0 / 12.0;
        if (k > 0) A(k, k - 1) = 1.0 / 12.0;
        if (k + 1 < m) A(k, k + 1) = 1.0 / 12.0;
    }
    return A;
}

Eigen::MatrixXd dense_second_difference(int m, double h) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
        D(k, k) = -2.0 / (h * h);
        if (k > 0) D(k, k - 1) = 1.0 / (h * h);
        if (k + 1 < m) D(k, k + 1) = 1.0 / (h * h);
    }
    return D;
}

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

Eigen::MatrixXd dense_H(const Grid2D& grid) {
    return kron(dense_compact(grid.nx() - 2), dense_compact(grid.ny() - 2));
}

Eigen::MatrixXd dense_Phi(const Grid2D& grid) {
    const int mx = grid.nx() - 2, my = grid.ny() - 2;
    return kron(dense_second_difference(mx, grid.h1()), dense_compact(my)) +
           kron(dense_compact(mx), dense_second_difference(my, grid.h2()));
}

namespace {

// Unknowns (U^{n+1}, V^{n+1}):
//   S (U^{n+1} - 2U^n + U^{n-1}) / tau^2 + q S (U^{n+1} - U^{n-1}) / (2 tau) + L (V^{n+1} + V^{n-1}) / 2 = S f^n
//   S (V^{n+1} - V^{n-1}) = L (U^{n+1} - U^{n-1})
std::pair<Eigen::VectorXd, Eigen::VectorXd> block_solve(const Eigen::MatrixXd& S, const Eigen::MatrixXd& L,
                                                        const Eigen::VectorXd& Um, const Eigen::VectorXd& U,
                                                        const Eigen::VectorXd& Vm, const Eigen::VectorXd& f,
                                                        double tau, double q) {
    const auto m = S.rows();
    Eigen::MatrixXd K(2 * m, 2 * m);
    K.topLeftCorner(m, m) = (1.0 / (tau * tau) + q / (2.0 * tau)) * S;
    K.topRightCorner(m, m) = 0.5 * L;
    K.bottomLeftCorner(m, m) = -L;
    K.bottomRightCorner(m, m) = S;
    Eigen::VectorXd rhs(2 * m);
    rhs.head(m) = S * f + S * (2.0 * U - Um) / (tau * tau) + (q / (2.0 * tau)) * (S * Um) - 0.5 * (L * Vm);
    rhs.tail(m) = S * Vm - L * Um;
    const Eigen::VectorXd x = K.partialPivLu().solve(rhs);
    return {x.head(m), x.tail(m)};
}

}  // namespace

std::pair<GridFn1D, GridFn1D> block_step_1d(const GridFn1D& U_prev, const GridFn1D& U_curr, const GridFn1D& V_prev,
                                            const GridFn1D& V_curr, const GridFn1D& f_n, double tau,
                                            const DampingLaw& law) {
    const auto& g = U_curr.grid();
    const int m = g.interior();
    const double q = q_coefficient(V_curr, law);
    auto [U, V] = block_solve(dense_compact(m), dense_second_difference(m, g.h()), interior(U_prev), interior(U_curr),
                              interior(V_prev), interior(f_n), tau, q);
    return {from_interior(g, U), from_interior(g, V)};
}

std::pair<GridFn2D, GridFn2D> block_step_2d(const GridFn2D& U_prev, const GridFn2D& U_curr, const GridFn2D& V_prev,
                                            const GridFn2D& V_curr, const GridFn2D& f_n, double tau,
                                            const DampingLaw& law) {
    const auto& g = U_curr.grid();
    const double q = q_coefficient(V_curr, law);
    auto [U, V] = block_solve(dense_H(g), dense_Phi(g), interior(U_prev), interior(U_curr), interior(V_prev),
                              interior(f_n), tau, q);
    return {from_interior(g, U), from_interior(g, V)};
}

GridFn1D random_fn(const Grid1D& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    GridFn1D u(grid);
    for (int j = 1; j < grid.nodes() - 1; ++j) u[j] = dist(rng);
    return u;
}

GridFn2D random_fn(const Grid2D& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    GridFn2D u(grid);
    for (int i = 1; i < grid.nx() - 1; ++i)
        for (int j = 1; j < grid.ny() - 1; ++j) u(i, j) = dist(rng);
    return u;
}

double max_abs_diff(const GridFn1D& a, const GridFn1D& b) {
    double m = 0.0;
    for (int j = 0; j < a.grid().nodes(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

double max_abs_diff(const GridFn2D& a, const GridFn2D& b) {
    double m = 0.0;
    const auto va = a.values(), vb = b.values();
    for (std::size_t k = 0; k < va.size(); ++k) m = std::max(m, std::abs(va[k] - vb[k]));
    return m;
}

double max_abs(const GridFn1D& a) { return max_abs_diff(a, GridFn1D(a.grid())); }
double max_abs(const GridFn2D& a) { return max_abs_diff(a, GridFn2D(a.grid())); }

}  // namespace dampedeb::testing
