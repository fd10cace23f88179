#pragma once

#include "dampedeb/stepper1d.hpp"
#include "dampedeb/stepper2d.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dampedeb {

enum class StudyKind { temporal, spatial };

const char* to_string(StudyKind kind);

/// One refinement level of a study, labelled by its finer discretization.
///
/// Temporal row N: terminal fields at T after N/2 steps (step 2T/N) and after
/// N steps (step T/N) on a fixed grid. Spatial row 2J: grids with J and 2J
/// intervals at a shared step, compared at the coarse nodes with the fine
/// mesh width as quadrature weight.
struct ConvergenceRow {
    int param = 0;               // fine step count N, or fine interval count 2J
    double tau_coarse = 0.0;
    double tau_fine = 0.0;
    double h_coarse = 0.0;
    double h_fine = 0.0;
    double error = 0.0;
    std::optional<double> order; // log2(previous error / error); absent on the first row
};

struct ConvergenceReport {
    StudyKind kind = StudyKind::temporal;
    int dimension = 1;
    std::string law_name;
    int theory_order = 2;
    /// Fixed parameter of the study: J (temporal) or the step count N (spatial).
    int fixed = 0;
    /// Free-form note recorded in the report header (profile, tolerances).
    std::string note;
    std::vector<ConvergenceRow> rows;
};

struct StudyOptions {
    /// Inner CG tolerance for 2D runs.
    CgOptions cg{1e-13, 0};
};

/// `N_list` holds the fine step counts (even, >= 4, ascending).
ConvergenceReport temporal_study(const Problem1D& problem, int J, std::span<const int> N_list);
ConvergenceReport temporal_study(const Problem2D& problem, int J, std::span<const int> N_list,
                                 const StudyOptions& options = {});

/// `steps` is the shared number of time steps; `J_list` holds the fine J
/// (even, >= 4, ascending), each row pairing J/2 with J.
ConvergenceReport spatial_study(const Problem1D& problem, int steps, std::span<const int> J_list);
ConvergenceReport spatial_study(const Problem2D& problem, int steps, std::span<const int> J_list,
                                const StudyOptions& options = {});

std::vector<EnergyRecord> energy_study(const Problem1D& problem, const Grid1D& grid, const TimeGrid& tg);
std::vector<EnergyRecord> energy_study(const Problem2D& problem, const Grid2D& grid, const TimeGrid& tg,
                                       const StudyOptions& options = {});

/// sqrt(h_fine * sum_j |coarse_j - fine_2j|^2) over coarse interior nodes
/// (h_fine^2 in place of h_fine in 2D).
double restricted_distance(const GridFn1D& coarse, const GridFn1D& fine);
double restricted_distance(const GridFn2D& coarse, const GridFn2D& fine);

/// Shortest round-trip decimal form of a double.
std::string format_shortest(double v);

/// CSV: a `# config-hash` comment line, a header row, then one row per level.
std::string to_csv(const ConvergenceReport& report, const std::string& config_hash);
/// Markdown table in the layout of a convergence table, with a Theory row.
std::string to_markdown(const ConvergenceReport& report);

}  // namespace dampedeb
