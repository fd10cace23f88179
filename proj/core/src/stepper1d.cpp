#include "dampedeb/stepper1d.hpp"

#include "dampedeb/error.hpp"
#include "dampedeb/operators.hpp"

#include <cmath>
#include <string>

namespace dampedeb {

namespace {

GridFn1D laplacian(const GridFn1D& u) { return solve_A(apply_D(u)); }

}  // namespace

StepperState1D init(const Problem1D& problem, const Grid1D& grid, const TimeGrid& tg) {
    const double tau = tg.tau();
    GridFn1D U0 = sample(grid, problem.u0, 0.0);
    GridFn1D u1 = sample(grid, problem.u1, 0.0);
    GridFn1D f0 = sample(grid, problem.f, 0.0);

    GridFn1D V0 = problem.lap_u0 ? sample(grid, *problem.lap_u0, 0.0) : laplacian(U0);
    const double q0 = q_coefficient(V0, problem.law);
    GridFn1D bilap = problem.bilap_u0 ? sample(grid, *problem.bilap_u0, 0.0) : laplacian(V0);

    // u_2 = u_tt(0) = -q(0) u_1 - u0'''' + f(0)
    GridFn1D u2 = f0;
    u2 -= bilap;
    u2.axpy(-q0, u1);

    GridFn1D U1 = U0;
    U1.axpy(tau, u1);
    U1.axpy(0.5 * tau * tau, u2);
    U1.clamp_boundary();
    GridFn1D V1 = laplacian(U1);
    const double q1 = q_coefficient(V1, problem.law);

    return StepperState1D{1, std::move(U0), std::move(U1), std::move(V0), std::move(V1), q1};
}

StepperState1D step(StepperState1D state, const GridFn1D& f_n, double tau, const DampingLaw& law) {
    const double q = state.q_curr;
    const double inv_tau2 = 1.0 / (tau * tau);
    const double a = inv_tau2 + q / (2.0 * tau);

    // A^2 [f + (2 U^n - (1 - q tau/2) U^{n-1}) / tau^2] + D^2 U^{n-1} / 2 - A D V^{n-1}
    GridFn1D w = f_n;
    w.axpy(2.0 * inv_tau2, state.U_curr);
    w.axpy(-(inv_tau2 - q / (2.0 * tau)), state.U_prev);
    GridFn1D rhs = apply_A(apply_A(w));
    rhs.axpy(0.5, apply_D(apply_D(state.U_prev)));
    rhs -= apply_A(apply_D(state.V_prev));

    GridFn1D U_next = solve_step_1d(build_step_matrix_1d(a, state.U_curr.grid()), rhs);

    GridFn1D V_next = state.V_prev;
    V_next += solve_A(apply_D(U_next - state.U_prev));

    state.U_prev = std::move(state.U_curr);
    state.U_curr = std::move(U_next);
    state.V_prev = std::move(state.V_curr);
    state.V_curr = std::move(V_next);
    state.q_curr = q_coefficient(state.V_curr, law);
    ++state.n;
    return state;
}

EnergyRecord energy(const StepperState1D& state, double tau) {
    GridFn1D dU = state.U_curr - state.U_prev;
    dU *= 1.0 / tau;
    const double kinetic = norm(apply_A(dU));
    const double v_next = norm(apply_A(state.V_curr));
    const double v_curr = norm(apply_A(state.V_prev));
    const double E = std::sqrt(kinetic * kinetic + 0.5 * (v_next * v_next + v_curr * v_curr));
    return EnergyRecord{state.n - 1, E, E, 0.0};
}

std::vector<MonotonicityViolation> check_energy_decay(const std::vector<EnergyRecord>& records, double rel_tol) {
    std::vector<MonotonicityViolation> out;
    if (records.empty()) return out;
    const double allowance = rel_tol * (1.0 + records.front().E);
    for (std::size_t k = 1; k < records.size(); ++k) {
        const double increase = records[k].E - records[k - 1].E;
        if (increase > allowance) out.push_back({records[k].n, increase});
    }
    return out;
}

StabilityReport stability_check(const std::vector<EnergyRecord>& records, double rel_tol) {
    StabilityReport report;
    if (records.empty()) return report;
    const double allowance = rel_tol * (1.0 + records.front().C_norm);
    for (const auto& r : records) {
        const double margin = r.C_norm - r.bound - allowance;
        if (margin > 0.0) report.violations.push_back({r.n, r.C_norm, r.bound, margin});
    }
    return report;
}

RunResult1D run(const Problem1D& problem, const Grid1D& grid, const TimeGrid& tg, const RunOptions1D& options) {
    const double tau = tg.tau();
    const bool zero_forcing = problem.f.is_zero_literal();

    StepperState1D state = init(problem, grid, tg);
    RunResult1D result{state, {}, {}, {}};
    result.records.reserve(tg.N() + 1);
    result.forcing_norms.assign(tg.N() + 1, 0.0);
    if (options.keep_snapshots) {
        result.snapshots.push_back(state.U_prev);
        result.snapshots.push_back(state.U_curr);
    }

    EnergyRecord rec = energy(state, tau);
    rec.bound = rec.C_norm;
    const double E0 = rec.C_norm;
    result.records.push_back(rec);
    if (options.observer) options.observer(state, rec);

    double forcing_sum = 0.0;
    GridFn1D f_n(grid);
    for (int n = 1; n <= tg.N(); ++n) {
        if (!zero_forcing) f_n = sample(grid, problem.f, tg.t(n));
        const double f_norm = zero_forcing ? 0.0 : norm(f_n);
        result.forcing_norms[n] = f_norm;
        forcing_sum += f_norm;

        state = step(std::move(state), f_n, tau, problem.law);
        for (double v : state.U_curr.values())
            if (!std::isfinite(v)) throw SolverError("non-finite solution at step " + std::to_string(n));

        rec = energy(state, tau);
        rec.bound = E0 + 2.0 * tau * forcing_sum;
        result.records.push_back(rec);
        if (options.keep_snapshots) result.snapshots.push_back(state.U_curr);
        if (options.observer) options.observer(state, rec);
    }
    result.final_state = std::move(state);
    return result;
}

namespace {

struct MolFields {
    GridFn1D U, W, V;
};

MolFields mol_rhs(const MolFields& s, const Problem1D& problem, double t) {
    const Grid1D& grid = s.U.grid();
    const double q = q_coefficient(s.V, problem.law);
    GridFn1D dW = problem.f.is_zero_literal() ? GridFn1D(grid) : sample(grid, problem.f, t);
    dW.axpy(-q, s.W);
    dW -= solve_A(apply_D(s.V));
    return MolFields{s.W, std::move(dW), solve_A(apply_D(s.W))};
}

MolFields combine(const MolFields& base, double s, const MolFields& k) {
    MolFields out = base;
    out.U.axpy(s, k.U);
    out.W.axpy(s, k.W);
    out.V.axpy(s, k.V);
    return out;
}

}  // namespace

MolState1D mol_reference(const Problem1D& problem, const Grid1D& grid, double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end >= 0.0)) throw std::invalid_argument("mol_reference: need dt > 0, t_end >= 0");
    const int steps = std::max(1, static_cast<int>(std::ceil(t_end / dt - 1e-9)));
    const double h = t_end / steps;

    GridFn1D U = sample(grid, problem.u0, 0.0);
    GridFn1D V = solve_A(apply_D(U));
    MolFields s{std::move(U), sample(grid, problem.u1, 0.0), std::move(V)};

    for (int k = 0; k < steps && t_end > 0.0; ++k) {
        const double t = k * h;
        const MolFields k1 = mol_rhs(s, problem, t);
        const MolFields k2 = mol_rhs(combine(s, 0.5 * h, k1), problem, t + 0.5 * h);
        const MolFields k3 = mol_rhs(combine(s, 0.5 * h, k2), problem, t + 0.5 * h);
        const MolFields k4 = mol_rhs(combine(s, h, k3), problem, t + h);
        s = combine(s, h / 6.0, k1);
        s = combine(s, h / 3.0, k2);
        s = combine(s, h / 3.0, k3);
        s = combine(s, h / 6.0, k4);
        for (double v : s.U.values())
            if (!std::isfinite(v) || std::abs(v) > 1e150)
                throw SolverError("RK4 reference became unstable at t=" + std::to_string(t + h) +
                                  "; reduce dt (guidance: dt <= h^2/4)");
    }
    return MolState1D{std::move(s.U), std::move(s.W), std::move(s.V)};
}

}  // namespace dampedeb
