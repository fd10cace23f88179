#pragma once

#include "dampedeb/damping.hpp"
#include "dampedeb/expr.hpp"
#include "dampedeb/mesh.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace dampedeb {

/// Beam problem u_tt + P(||u_xx||^2) u_t + u_xxxx = f on (0, 1), hinged ends.
struct Problem1D {
    expr::Expression u0;
    expr::Expression u1;
    expr::Expression f;
    DampingLaw law = DampingLaw::linear();
    double T = 1.0;
    /// Analytic u0'' and u0''''; when both are set they replace the discrete
    /// realizations in the startup step.
    std::optional<expr::Expression> lap_u0;
    std::optional<expr::Expression> bilap_u0;
};

/// Sliding window of the two most recent levels (n-1, n).
struct StepperState1D {
    int n = 0;
    GridFn1D U_prev, U_curr;
    GridFn1D V_prev, V_curr;
    double q_curr = 0.0;
};

/// Discrete energy of level n, i.e. computed from levels n and n+1.
struct EnergyRecord {
    int n = 0;
    double E = 0.0;
    /// ||U^n||_C, identical to E by definition.
    double C_norm = 0.0;
    /// ||U^0||_C + 2 tau sum_{j=1}^{n} ||f^j||
    double bound = 0.0;
};

struct StabilityViolation {
    int n;
    double value;
    double bound;
    double margin;  // value - bound - allowance (positive)
};

struct StabilityReport {
    std::vector<StabilityViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

struct MonotonicityViolation {
    int n;          // E^n > E^{n-1} + allowance
    double increase;
};

/// Checks E^n <= E^{n-1} + rel_tol (1 + E^0) for consecutive records.
std::vector<MonotonicityViolation> check_energy_decay(const std::vector<EnergyRecord>& records, double rel_tol);

/// Stability inequality ||U^n||_C <= bound_n + rel_tol (1 + ||U^0||_C) at every record.
StabilityReport stability_check(const std::vector<EnergyRecord>& records, double rel_tol = 1e-10);

/// Levels U^0, U^1 and V^0, V^1; the returned state sits at n = 1.
StepperState1D init(const Problem1D& problem, const Grid1D& grid, const TimeGrid& tg);

/// Advances from level n to n+1. `f_n` is the forcing sampled at t_n.
StepperState1D step(StepperState1D state, const GridFn1D& f_n, double tau, const DampingLaw& law);

/// Energy of level state.n - 1, to be called right after init or a step.
EnergyRecord energy(const StepperState1D& state, double tau);

struct RunOptions1D {
    /// Keep U at every level (memory O(N J)).
    bool keep_snapshots = false;
    /// Called after init and after each step with the fresh energy record.
    std::function<void(const StepperState1D&, const EnergyRecord&)> observer;
};

struct RunResult1D {
    StepperState1D final_state;
    std::vector<EnergyRecord> records;     // n = 0..N
    std::vector<double> forcing_norms;     // ||f^n||, n = 1..N (index 0 unused)
    std::vector<GridFn1D> snapshots;
};

/// init followed by N steps, ending at level N+1 (time T).
RunResult1D run(const Problem1D& problem, const Grid1D& grid, const TimeGrid& tg, const RunOptions1D& options = {});

struct MolState1D {
    GridFn1D U, W, V;  // U, U' and V at t_end
};

/// Classical RK4 on the spatially semi-discrete system with V propagated by
/// A V' = D U'. Throws SolverError if the trajectory blows up.
MolState1D mol_reference(const Problem1D& problem, const Grid1D& grid, double t_end, double dt);

}  // namespace dampedeb
