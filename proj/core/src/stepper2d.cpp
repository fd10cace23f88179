#include "dampedeb/stepper2d.hpp"

#include "dampedeb/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dampedeb {

namespace {

GridFn2D laplacian(const GridFn2D& u) { return solve_H(apply_Phi(u)); }

}  // namespace

StepperState2D init2d(const Problem2D& problem, const Grid2D& grid, const TimeGrid& tg) {
    const double tau = tg.tau();
    GridFn2D U0 = sample(grid, problem.u0, 0.0);
    GridFn2D u1 = sample(grid, problem.u1, 0.0);
    GridFn2D f0 = sample(grid, problem.f, 0.0);

    GridFn2D V0 = problem.lap_u0 ? sample(grid, *problem.lap_u0, 0.0) : laplacian(U0);
    const double q0 = q_coefficient(V0, problem.law);
    GridFn2D bilap = problem.bilap_u0 ? sample(grid, *problem.bilap_u0, 0.0) : laplacian(V0);

    GridFn2D u2 = f0;
    u2 -= bilap;
    u2.axpy(-q0, u1);

    GridFn2D U1 = U0;
    U1.axpy(tau, u1);
    U1.axpy(0.5 * tau * tau, u2);
    U1.clamp_boundary();
    GridFn2D V1 = laplacian(U1);
    const double q1 = q_coefficient(V1, problem.law);

    return StepperState2D{1, std::move(U0), std::move(U1), std::move(V0), std::move(V1), q1};
}

StepperState2D step2d(StepperState2D state, const GridFn2D& f_n, double tau, const DampingLaw& law,
                      const CgOptions& cg, CgStats* stats) {
    const double q = state.q_curr;
    const double inv_tau2 = 1.0 / (tau * tau);
    const double a = inv_tau2 + q / (2.0 * tau);

    GridFn2D w = f_n;
    w.axpy(2.0 * inv_tau2, state.U_curr);
    w.axpy(-(inv_tau2 - q / (2.0 * tau)), state.U_prev);
    GridFn2D rhs = apply_H(apply_H(w));
    rhs.axpy(0.5, apply_Phi(apply_Phi(state.U_prev)));
    rhs -= apply_Phi(apply_H(state.V_prev));

    GridFn2D guess = 2.0 * state.U_curr;
    guess -= state.U_prev;
    GridFn2D U_next = solve_step_2d(a, rhs, cg, &guess, stats);

    GridFn2D V_next = state.V_prev;
    V_next += solve_H(apply_Phi(U_next - state.U_prev));

    state.U_prev = std::move(state.U_curr);
    state.U_curr = std::move(U_next);
    state.V_prev = std::move(state.V_curr);
    state.V_curr = std::move(V_next);
    state.q_curr = q_coefficient(state.V_curr, law);
    ++state.n;
    return state;
}

EnergyRecord energy2d(const StepperState2D& state, double tau) {
    GridFn2D dU = state.U_curr - state.U_prev;
    dU *= 1.0 / tau;
    const double kinetic = norm(apply_H(dU));
    const double v_next = norm(apply_H(state.V_curr));
    const double v_curr = norm(apply_H(state.V_prev));
    const double E = std::sqrt(kinetic * kinetic + 0.5 * (v_next * v_next + v_curr * v_curr));
    return EnergyRecord{state.n - 1, E, E, 0.0};
}

RunResult2D run2d(const Problem2D& problem, const Grid2D& grid, const TimeGrid& tg, const RunOptions2D& options) {
    const double tau = tg.tau();
    const bool zero_forcing = problem.f.is_zero_literal();

    StepperState2D state = init2d(problem, grid, tg);
    RunResult2D result{state, {}, {}, {}};
    result.records.reserve(tg.N() + 1);
    result.forcing_norms.assign(tg.N() + 1, 0.0);
    if (options.keep_snapshots) {
        result.snapshots.push_back(state.U_prev);
        result.snapshots.push_back(state.U_curr);
    }

    EnergyRecord rec = energy2d(state, tau);
    rec.bound = rec.C_norm;
    const double E0 = rec.C_norm;
    result.records.push_back(rec);
    if (options.observer) options.observer(state, rec);

    double forcing_sum = 0.0;
    GridFn2D f_n(grid);
    for (int n = 1; n <= tg.N(); ++n) {
        if (!zero_forcing) f_n = sample(grid, problem.f, tg.t(n));
        const double f_norm = zero_forcing ? 0.0 : norm(f_n);
        result.forcing_norms[n] = f_norm;
        forcing_sum += f_norm;

        CgStats stats;
        state = step2d(std::move(state), f_n, tau, problem.law, options.cg, &stats);
        result.cg_iterations += stats.iterations;
        result.max_cg_iterations = std::max(result.max_cg_iterations, stats.iterations);
        for (double v : state.U_curr.values())
            if (!std::isfinite(v)) throw SolverError("non-finite solution at step " + std::to_string(n));

        rec = energy2d(state, tau);
        rec.bound = E0 + 2.0 * tau * forcing_sum;
        result.records.push_back(rec);
        if (options.keep_snapshots) result.snapshots.push_back(state.U_curr);
        if (options.observer) options.observer(state, rec);
    }
    result.final_state = std::move(state);
    return result;
}

}  // namespace dampedeb
