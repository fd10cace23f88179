#pragma once

#include "dampedeb/damping.hpp"
#include "dampedeb/expr.hpp"
#include "dampedeb/mesh.hpp"
#include "dampedeb/operators.hpp"
#include "dampedeb/stepper1d.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace dampedeb {

/// Plate problem on the unit square with hinged edges.
struct Problem2D {
    expr::Expression u0;
    expr::Expression u1;
    expr::Expression f;
    DampingLaw law = DampingLaw::linear();
    double T = 1.0;
    std::optional<expr::Expression> lap_u0;
    std::optional<expr::Expression> bilap_u0;
};

struct StepperState2D {
    int n = 0;
    GridFn2D U_prev, U_curr;
    GridFn2D V_prev, V_curr;
    double q_curr = 0.0;
};

StepperState2D init2d(const Problem2D& problem, const Grid2D& grid, const TimeGrid& tg);

/// Advances from level n to n+1; the inner solve is warm-started from 2U^n - U^{n-1}.
StepperState2D step2d(StepperState2D state, const GridFn2D& f_n, double tau, const DampingLaw& law,
                      const CgOptions& cg = {}, CgStats* stats = nullptr);

/// Energy of level state.n - 1 built on H in place of A.
EnergyRecord energy2d(const StepperState2D& state, double tau);

struct RunOptions2D {
    CgOptions cg{};
    bool keep_snapshots = false;
    std::function<void(const StepperState2D&, const EnergyRecord&)> observer;
};

struct RunResult2D {
    StepperState2D final_state;
    std::vector<EnergyRecord> records;
    std::vector<double> forcing_norms;
    std::vector<GridFn2D> snapshots;
    long long cg_iterations = 0;
    int max_cg_iterations = 0;
};

RunResult2D run2d(const Problem2D& problem, const Grid2D& grid, const TimeGrid& tg, const RunOptions2D& options = {});

/// Same inequality as the 1D stability check; the energy plays the role of ||U^n||_a.
inline StabilityReport stability_check2d(const std::vector<EnergyRecord>& records, double rel_tol = 1e-10) {
    return stability_check(records, rel_tol);
}

}  // namespace dampedeb
