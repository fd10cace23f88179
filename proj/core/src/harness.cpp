#include "dampedeb/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dampedeb {

const char* to_string(StudyKind kind) { return kind == StudyKind::temporal ? "temporal" : "spatial"; }

namespace {

void require_refinable(std::span<const int> values, int minimum, const char* what) {
    if (values.empty()) throw std::invalid_argument(std::string(what) + " must not be empty");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] < minimum || values[k] % 2 != 0)
            throw std::invalid_argument(std::string(what) + " entries must be even and >= " + std::to_string(minimum));
        if (k > 0 && values[k] <= values[k - 1]) throw std::invalid_argument(std::string(what) + " must be ascending");
    }
}

void fill_orders(ConvergenceReport& report) {
    for (std::size_t k = 1; k < report.rows.size(); ++k) {
        const double prev = report.rows[k - 1].error, cur = report.rows[k].error;
        if (prev > 0.0 && cur > 0.0) report.rows[k].order = std::log2(prev / cur);
    }
}

// Terminal fields keyed by refinement level; a level is reused when it
// reappears as the coarse half of the next row.
template<class Fn, class Solve>
class TerminalCache {
public:
    explicit TerminalCache(Solve solve) : solve_(std::move(solve)) {}

    const Fn& get(int level) {
        auto it = cache_.find(level);
        if (it == cache_.end()) it = cache_.emplace(level, solve_(level)).first;
        return it->second;
    }
    void drop_below(int level) {
        std::erase_if(cache_, [&](const auto& kv) { return kv.first < level; });
    }

private:
    Solve solve_;
    std::map<int, Fn> cache_;
};

template<class Fn, class Solve>
ConvergenceReport temporal_impl(int dimension, const std::string& law, int J, std::span<const int> N_list,
                                double T, double h, Solve solve) {
    require_refinable(N_list, 4, "N_list");
    ConvergenceReport report;
    report.kind = StudyKind::temporal;
    report.dimension = dimension;
    report.law_name = law;
    report.theory_order = 2;
    report.fixed = J;

    TerminalCache<Fn, Solve> cache(std::move(solve));
    for (int N : N_list) {
        const Fn coarse = cache.get(N / 2);
        const Fn& fine = cache.get(N);
        ConvergenceRow row;
        row.param = N;
        row.tau_coarse = 2.0 * T / N;
        row.tau_fine = T / N;
        row.h_coarse = row.h_fine = h;
        row.error = norm(coarse - fine);
        report.rows.push_back(row);
        cache.drop_below(N);
    }
    fill_orders(report);
    return report;
}

template<class Fn, class Solve>
ConvergenceReport spatial_impl(int dimension, const std::string& law, int steps, std::span<const int> J_list,
                               double T, Solve solve) {
    require_refinable(J_list, 4, "J_list");
    ConvergenceReport report;
    report.kind = StudyKind::spatial;
    report.dimension = dimension;
    report.law_name = law;
    report.theory_order = 4;
    report.fixed = steps;

    TerminalCache<Fn, Solve> cache(std::move(solve));
    for (int J : J_list) {
        const Fn coarse = cache.get(J / 2);
        const Fn& fine = cache.get(J);
        ConvergenceRow row;
        row.param = 2 * J;
        row.tau_coarse = row.tau_fine = T / steps;
        row.h_coarse = 1.0 / J;
        row.h_fine = 1.0 / (2.0 * J);
        row.error = restricted_distance(coarse, fine);
        report.rows.push_back(row);
        cache.drop_below(J);
    }
    fill_orders(report);
    return report;
}

}  // namespace

double restricted_distance(const GridFn1D& coarse, const GridFn1D& fine) {
    if (fine.grid().J() != 2 * coarse.grid().J())
        throw std::invalid_argument("restricted_distance: fine grid must have twice the intervals");
    double sum = 0.0;
    for (int j = 1; j < coarse.grid().nodes() - 1; ++j) {
        const double d = coarse[j] - fine[2 * j];
        sum += d * d;
    }
    return std::sqrt(fine.grid().h() * sum);
}

double restricted_distance(const GridFn2D& coarse, const GridFn2D& fine) {
    const auto& g = coarse.grid();
    if (fine.grid().J1() != 2 * g.J1() || fine.grid().J2() != 2 * g.J2())
        throw std::invalid_argument("restricted_distance: fine grid must have twice the intervals");
    double sum = 0.0;
    for (int i = 1; i < g.nx() - 1; ++i)
        for (int j = 1; j < g.ny() - 1; ++j) {
            const double d = coarse(i, j) - fine(2 * i, 2 * j);
            sum += d * d;
        }
    return std::sqrt(fine.grid().h1() * fine.grid().h2() * sum);
}

ConvergenceReport temporal_study(const Problem1D& problem, int J, std::span<const int> N_list) {
    const Grid1D grid(J);
    return temporal_impl<GridFn1D>(1, problem.law.name(), J, N_list, problem.T, grid.h(), [&](int N) {
        return run(problem, grid, TimeGrid::with_steps(N, problem.T)).final_state.U_curr;
    });
}

ConvergenceReport temporal_study(const Problem2D& problem, int J, std::span<const int> N_list,
                                 const StudyOptions& options) {
    const Grid2D grid(J, J);
    RunOptions2D run_options;
    run_options.cg = options.cg;
    return temporal_impl<GridFn2D>(2, problem.law.name(), J, N_list, problem.T, grid.h1(), [&](int N) {
        return run2d(problem, grid, TimeGrid::with_steps(N, problem.T), run_options).final_state.U_curr;
    });
}

ConvergenceReport spatial_study(const Problem1D& problem, int steps, std::span<const int> J_list) {
    const TimeGrid tg = TimeGrid::with_steps(steps, problem.T);
    return spatial_impl<GridFn1D>(1, problem.law.name(), steps, J_list, problem.T, [&](int J) {
        return run(problem, Grid1D(J), tg).final_state.U_curr;
    });
}

ConvergenceReport spatial_study(const Problem2D& problem, int steps, std::span<const int> J_list,
                                const StudyOptions& options) {
    const TimeGrid tg = TimeGrid::with_steps(steps, problem.T);
    RunOptions2D run_options;
    run_options.cg = options.cg;
    return spatial_impl<GridFn2D>(2, problem.law.name(), steps, J_list, problem.T, [&](int J) {
        return run2d(problem, Grid2D(J, J), tg, run_options).final_state.U_curr;
    });
}

std::vector<EnergyRecord> energy_study(const Problem1D& problem, const Grid1D& grid, const TimeGrid& tg) {
    return run(problem, grid, tg).records;
}

std::vector<EnergyRecord> energy_study(const Problem2D& problem, const Grid2D& grid, const TimeGrid& tg,
                                       const StudyOptions& options) {
    RunOptions2D run_options;
    run_options.cg = options.cg;
    return run2d(problem, grid, tg, run_options).records;
}

std::string format_shortest(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string to_csv(const ConvergenceReport& report, const std::string& config_hash) {
    std::ostringstream out;
    out << "# config-hash: " << config_hash << '\n';
    out << "kind,dimension,law,fixed,param,tau_coarse,tau_fine,h_coarse,h_fine,error,order\n";
    for (const auto& row : report.rows) {
        out << to_string(report.kind) << ',' << report.dimension << ",\"" << report.law_name << "\","
            << report.fixed << ',' << row.param << ',' << format_shortest(row.tau_coarse) << ','
            << format_shortest(row.tau_fine) << ',' << format_shortest(row.h_coarse) << ','
            << format_shortest(row.h_fine) << ',' << format_shortest(row.error) << ','
            << (row.order ? format_shortest(*row.order) : std::string()) << '\n';
    }
    return out.str();
}

std::string to_markdown(const ConvergenceReport& report) {
    const bool temporal = report.kind == StudyKind::temporal;
    std::ostringstream out;
    char buf[128];
    out << "### " << (temporal ? "Temporal" : "Spatial") << " convergence, " << report.dimension << "D, P(z) = "
        << report.law_name << ", " << (temporal ? "J = " : "N = ") << report.fixed << "\n\n";
    if (!report.note.empty()) out << report.note << "\n\n";
    out << (temporal ? "| N | error | order |\n" : "| 2J | error | order |\n");
    out << "|---|---|---|\n";
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%.4e", row.error);
        out << "| " << row.param << " | " << buf << " | ";
        if (row.order) {
            std::snprintf(buf, sizeof buf, "%.2f", *row.order);
            out << buf;
        } else {
            out << '*';
        }
        out << " |\n";
    }
    std::snprintf(buf, sizeof buf, "%.2f", static_cast<double>(report.theory_order));
    out << "| Theory |  | " << buf << " |\n";
    return out.str();
}

}  // namespace dampedeb
