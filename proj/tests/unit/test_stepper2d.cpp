#include "dampedeb/operators.hpp"
#include "dampedeb/stepper2d.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dampedeb;
using namespace dampedeb::testing;

namespace {

Problem2D example2(const char* law = "linear") {
    Problem2D p;
    p.u0 = expr::parse("sin(pi*x)*sin(pi*y)");
    p.u1 = expr::parse("0");
    p.f = expr::parse("t^3*sin(pi*x)*sin(pi*y)");
    p.law = DampingLaw::from_spec(law);
    return p;
}

}  // namespace

TEST_CASE("zero plate data") {
    Problem2D p;
    p.u0 = p.u1 = p.f = expr::parse("0");
    const auto r = run2d(p, Grid2D(4, 4), TimeGrid::with_steps(8, 1.0));
    CHECK(max_abs(r.final_state.U_curr) == 0.0);
    for (const auto& rec : r.records) CHECK(rec.E == 0.0);
}

TEST_CASE("plate startup") {
    const Grid2D g(16, 16);
    const auto s = init2d(example2(), g, TimeGrid::with_steps(100, 1.0));
    const double pi = std::numbers::pi;
    double err = 0.0;
    for (int i = 1; i < g.nx() - 1; ++i)
        for (int j = 1; j < g.ny() - 1; ++j)
            err = std::max(err, std::abs(s.V_prev(i, j) + 2 * pi * pi * std::sin(pi * g.x(i)) * std::sin(pi * g.y(j))));
    CHECK(err <= 20.0 * 2 * std::pow(g.h1(), 4));
    const auto damped = init2d(example2("constant(40)"), g, TimeGrid::with_steps(100, 1.0));
    CHECK(max_abs_diff(damped.U_curr, s.U_curr) <= 1e-14);
}

TEST_CASE("plate step matches the block system and satisfies the scheme") {
    const Grid2D g(4, 4);
    const TimeGrid tg = TimeGrid::with_steps(8, 1.0);
    const auto p = example2("sqrt");
    auto s = init2d(p, g, tg);
    const double tau = tg.tau();
    for (int n = 1; n < 8; ++n) {
        const auto f = sample(g, p.f, tg.t(n));
        const auto next = step2d(s, f, tau, p.law, CgOptions{1e-14, 0});
        const auto [U, V] = block_step_2d(s.U_prev, s.U_curr, s.V_prev, s.V_curr, f, tau, p.law);
        CHECK(max_abs_diff(next.U_curr, U) <= 1e-9);
        CHECK(max_abs_diff(next.V_curr, V) <= 1e-9 * (1 + max_abs(V)));

        const double q = q_coefficient(s.V_curr, p.law);
        const auto dtt = (1.0 / (tau * tau)) * (next.U_curr - 2.0 * s.U_curr + s.U_prev);
        const auto dt = (1.0 / (2 * tau)) * (next.U_curr - s.U_prev);
        const auto vt = 0.5 * (next.V_curr + s.V_prev);
        const auto r1 = apply_H(dtt) + q * apply_H(dt) + apply_Phi(vt) - apply_H(f);
        CHECK(max_abs(r1) <= 1e-9 * (max_abs(apply_H(dtt)) + max_abs(apply_Phi(vt)) + 1.0));
        s = next;
    }
}

TEST_CASE("plate energy and stability") {
    auto p = example2();
    p.f = expr::parse("0");
    const auto r = run2d(p, Grid2D(8, 8), TimeGrid::with_steps(128, 1.0));
    CHECK(check_energy_decay(r.records, 1e-11).empty());
    CHECK(stability_check2d(r.records).ok());
    const auto forced = run2d(example2(), Grid2D(8, 8), TimeGrid::with_steps(64, 1.0));
    CHECK(stability_check2d(forced.records).ok());
    CHECK(forced.cg_iterations > 0);
}

TEST_CASE("x-y symmetry") {
    Problem2D p;
    p.u0 = expr::parse("x*y*(1-x)*(1-y)*(1 + x + y)");
    p.u1 = expr::parse("sin(pi*x)*sin(2*pi*y) + sin(2*pi*x)*sin(pi*y)");
    p.f = expr::parse("t*x*y");
    p.law = DampingLaw::sqrt_law();
    const Grid2D g(5, 5);
    RunOptions2D opt;
    opt.cg.tol = 1e-14;
    double worst = 0.0;
    opt.observer = [&](const StepperState2D& s, const EnergyRecord&) {
        for (int i = 0; i < g.nx(); ++i)
            for (int j = 0; j < g.ny(); ++j) worst = std::max(worst, std::abs(s.U_curr(i, j) - s.U_curr(j, i)));
    };
    run2d(p, g, TimeGrid::with_steps(30, 1.0), opt);
    CHECK(worst <= 1e-10);
}

TEST_CASE("plate with separable data reduces to the beam") {
    // u0 = sin(pi x) sin(pi y) with a constant law keeps the single mode shape
    Problem2D p = example2("constant(1)");
    const Grid2D g(4, 4);
    const auto r = run2d(p, g, TimeGrid::with_steps(20, 1.0));
    const auto& U = r.final_state.U_curr;
    const double ratio = U(2, 3) / (std::sin(std::numbers::pi * g.x(2)) * std::sin(std::numbers::pi * g.y(3)));
    for (int i = 1; i < g.nx() - 1; ++i)
        for (int j = 1; j < g.ny() - 1; ++j)
            CHECK(U(i, j) == doctest::Approx(ratio * std::sin(std::numbers::pi * g.x(i)) *
                                             std::sin(std::numbers::pi * g.y(j)))
                                 .epsilon(1e-9));
}
