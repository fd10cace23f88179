#include "dampedeb/error.hpp"
#include "dampedeb/operators.hpp"
#include "dampedeb/stepper1d.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dampedeb;
using namespace dampedeb::testing;

namespace {

Problem1D example1(const char* law = "sqrt") {
    Problem1D p;
    p.u0 = expr::parse("sin(pi*x)");
    p.u1 = expr::parse("0");
    p.f = expr::parse("t^3*sin(pi*x)");
    p.law = DampingLaw::from_spec(law);
    return p;
}

Problem1D zero_problem() {
    Problem1D p;
    p.u0 = p.u1 = p.f = expr::parse("0");
    return p;
}

}  // namespace

TEST_CASE("zero data stays zero") {
    const Grid1D g(8);
    const auto r = run(zero_problem(), g, TimeGrid::with_steps(16, 1.0));
    CHECK(max_abs(r.final_state.U_curr) == 0.0);
    CHECK(max_abs(r.final_state.V_curr) == 0.0);
    for (const auto& rec : r.records) CHECK(rec.E == 0.0);
    const auto s = step(r.final_state, GridFn1D(g), 0.1, DampingLaw::linear());
    CHECK(max_abs(s.U_curr) == 0.0);
}

TEST_CASE("startup levels") {
    const Grid1D g(32);
    const TimeGrid tg = TimeGrid::with_steps(100, 1.0);
    auto p = example1();
    const auto s = init(p, g, tg);
    CHECK(s.n == 1);
    const double pi = std::numbers::pi;
    double err = 0.0;
    for (int j = 1; j < g.nodes() - 1; ++j) err = std::max(err, std::abs(s.V_prev[j] + pi * pi * std::sin(pi * g.x(j))));
    CHECK(err <= 10.0 * std::pow(g.h(), 4));
    CHECK(s.q_curr >= 1.0);

    // u1 = 0 and f(0) = 0: the second-order term is -A^{-1} D V^0 for every law
    const double tau = tg.tau();
    const auto expected = s.U_prev + (-0.5 * tau * tau) * solve_A(apply_D(s.V_prev));
    for (const char* law : {"sqrt", "linear", "constant(50)"}) {
        const auto sl = init(example1(law), g, tg);
        CHECK(max_abs_diff(sl.U_curr, expected) <= 1e-14);
    }
    CHECK(max_abs_diff(s.V_curr, solve_A(apply_D(s.U_curr))) <= 1e-10);
}

TEST_CASE("analytic startup overrides") {
    const Grid1D g(16);
    const TimeGrid tg = TimeGrid::with_steps(50, 1.0);
    auto p = example1();
    p.lap_u0 = expr::parse("-pi^2*sin(pi*x)");
    p.bilap_u0 = expr::parse("pi^4*sin(pi*x)");
    const auto s = init(p, g, tg);
    const double pi = std::numbers::pi;
    CHECK(s.V_prev[8] == doctest::Approx(-pi * pi * std::sin(pi * g.x(8))));
}

TEST_CASE("one step satisfies the coupled scheme") {
    const Grid1D g(8);
    const TimeGrid tg = TimeGrid::with_steps(8, 1.0);
    const auto p = example1();
    auto s = init(p, g, tg);
    const double tau = tg.tau();
    for (int n = 1; n < 8; ++n) {
        const auto f = sample(g, p.f, tg.t(n));
        const auto next = step(s, f, tau, p.law);
        const double q = q_coefficient(s.V_curr, p.law);
        const auto dtt = (1.0 / (tau * tau)) * (next.U_curr - 2.0 * s.U_curr + s.U_prev);
        const auto dt = (1.0 / (2 * tau)) * (next.U_curr - s.U_prev);
        const auto vt = 0.5 * (next.V_curr + s.V_prev);
        const auto r1 = apply_A(dtt) + q * apply_A(dt) + apply_D(vt) - apply_A(f);
        const auto r2 = apply_A(next.V_curr - s.V_prev) - apply_D(next.U_curr - s.U_prev);
        const double scale = max_abs(apply_A(dtt)) + max_abs(apply_D(vt)) + 1.0;
        CHECK(max_abs(r1) <= 1e-10 * scale);
        CHECK(max_abs(r2) <= 1e-10 * (max_abs(apply_D(next.U_curr)) + 1.0));

        const auto [U, V] = block_step_1d(s.U_prev, s.U_curr, s.V_prev, s.V_curr, f, tau, p.law);
        CHECK(max_abs_diff(next.U_curr, U) <= 1e-10);
        CHECK(max_abs_diff(next.V_curr, V) <= 1e-10 * (1 + max_abs(V)));
        CHECK(next.n == n + 1);
        s = next;
    }
}

TEST_CASE("energy decays without forcing and the stability bound holds") {
    auto p = example1();
    p.f = expr::parse("0");
    const auto r = run(p, Grid1D(16), TimeGrid::with_steps(2048, 1.0));
    CHECK(check_energy_decay(r.records, 1e-12).empty());
    CHECK(stability_check(r.records).ok());
    CHECK(r.records.back().E < r.records.front().E);

    const auto forced = run(example1("linear"), Grid1D(16), TimeGrid::with_steps(512, 1.0));
    CHECK(stability_check(forced.records).ok());
    CHECK(forced.records.size() == 512);
    auto corrupted = forced.records;
    corrupted[100].E *= 2;
    corrupted[100].C_norm *= 2;
    CHECK_FALSE(stability_check(corrupted).ok());
    CHECK_FALSE(check_energy_decay(corrupted, 1e-12).empty());
}

TEST_CASE("energy of a hand-built state") {
    const Grid1D g(4);
    GridFn1D s(g);
    for (int j = 1; j < g.nodes() - 1; ++j) s[j] = std::sin(std::numbers::pi * g.x(j));
    s *= 1.0 / norm(s);
    const double tau = 0.1;
    StepperState1D st{3, GridFn1D(g), tau * solve_A(s), solve_A(s), solve_A(s), 1.0};
    const auto rec = energy(st, tau);
    CHECK(rec.n == 2);
    CHECK(rec.E == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(energy(StepperState1D{1, GridFn1D(g), GridFn1D(g), GridFn1D(g), GridFn1D(g), 1.0}, tau).E == 0.0);
}

TEST_CASE("a single step run") {
    const auto r = run(example1(), Grid1D(4), TimeGrid::with_steps(2, 1.0));
    CHECK(r.final_state.n == 2);
    CHECK(r.records.size() == 2);
}

TEST_CASE("superposition with a constant law") {
    Problem1D p, q, sum;
    p.u0 = expr::parse("sin(pi*x)");
    p.u1 = expr::parse("x*(1-x)");
    p.f = expr::parse("t*x");
    q.u0 = expr::parse("x^2*(1-x)");
    q.u1 = expr::parse("0.3*sin(2*pi*x)");
    q.f = expr::parse("cos(t)*sin(3*pi*x)");
    sum.u0 = expr::parse("sin(pi*x) + x^2*(1-x)");
    sum.u1 = expr::parse("x*(1-x) + 0.3*sin(2*pi*x)");
    sum.f = expr::parse("t*x + cos(t)*sin(3*pi*x)");
    for (auto* pr : {&p, &q, &sum}) pr->law = DampingLaw::constant(2.0);
    const Grid1D g(8);
    const auto tg = TimeGrid::with_steps(40, 1.0);
    const auto a = run(p, g, tg).final_state.U_curr;
    const auto b = run(q, g, tg).final_state.U_curr;
    const auto c = run(sum, g, tg).final_state.U_curr;
    CHECK(max_abs_diff(a + b, c) <= 1e-10);
}

TEST_CASE("snapshots and observers") {
    int calls = 0;
    RunOptions1D opt;
    opt.keep_snapshots = true;
    opt.observer = [&](const StepperState1D&, const EnergyRecord&) { ++calls; };
    const auto r = run(example1(), Grid1D(4), TimeGrid::with_steps(10, 1.0), opt);
    CHECK(calls == 10);
    CHECK(r.snapshots.size() == 11);  // levels 0..N+1
}

TEST_CASE("method-of-lines reference") {
    const Grid1D g(8);
    const auto zero = mol_reference(zero_problem(), g, 1.0, 1e-3);
    CHECK(max_abs(zero.U) == 0.0);
    const auto p = example1();
    const auto ref = mol_reference(p, g, 1.0, 2e-4);
    const auto fine = run(p, g, TimeGrid::with_steps(1024, 1.0)).final_state.U_curr;
    CHECK(max_abs_diff(ref.U, fine) <= 1e-4);
    CHECK_THROWS_AS(mol_reference(p, g, 1.0, 0.05), SolverError);
}
