#include "dampedeb/cli.hpp"
#include "dampedeb/error.hpp"
#include "dampedeb/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace dampedeb::cli {

namespace {

constexpr double energy_tol_1d = 1e-12;
constexpr double energy_tol_2d = 1e-11;
constexpr double stability_tol = 1e-10;

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content, ExecResult& result) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write to '" + path.string() + "' failed");
    result.artifacts.push_back(path);
}

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

Problem1D problem1d(const RunConfig& c) {
    Problem1D p;
    p.u0 = *c.u0;
    p.u1 = c.u1;
    p.f = c.f;
    p.law = c.make_law();
    p.T = c.T;
    p.lap_u0 = c.lap_u0;
    p.bilap_u0 = c.bilap_u0;
    return p;
}

Problem2D problem2d(const RunConfig& c) {
    Problem2D p;
    p.u0 = *c.u0;
    p.u1 = c.u1;
    p.f = c.f;
    p.law = c.make_law();
    p.T = c.T;
    p.lap_u0 = c.lap_u0;
    p.bilap_u0 = c.bilap_u0;
    return p;
}

std::string energy_csv(const std::vector<EnergyRecord>& records, const TimeGrid& tg, const std::string& hash) {
    std::ostringstream out;
    out << "# config-hash: " << hash << '\n' << "n,t,E,bound\n";
    for (const auto& r : records)
        out << r.n << ',' << format_shortest(tg.t(r.n)) << ',' << format_shortest(r.E) << ','
            << format_shortest(r.bound) << '\n';
    return out.str();
}

void check_records(const RunConfig& c, const std::vector<EnergyRecord>& records, ExecResult& result) {
    const auto stability = stability_check(records, stability_tol).violations;
    if (!stability.empty()) {
        const auto& v = stability.front();
        result.status = 1;
        result.diagnostics.push_back("stability bound violated at " + std::to_string(stability.size()) +
                                     " levels, first n=" + std::to_string(v.n) + ": " + format_shortest(v.value) +
                                     " > " + format_shortest(v.bound));
    }
    if (!c.f.is_zero_literal()) return;
    const double tol = c.dimension == 1 ? energy_tol_1d : energy_tol_2d;
    const auto growth = check_energy_decay(records, tol);
    if (!growth.empty()) {
        result.status = 1;
        result.diagnostics.push_back("energy increased at " + std::to_string(growth.size()) + " levels, first n=" +
                                     std::to_string(growth.front().n) + " by " +
                                     format_shortest(growth.front().increase));
    }
}

CgOptions cg_options(const RunConfig& c, double fallback) { return CgOptions{c.cg_tol.value_or(fallback), 0}; }

std::string norms_csv(const RunConfig& c, const std::vector<std::pair<double, double>>& values,
                      const std::string& hash) {
    std::ostringstream out;
    out << "# config-hash: " << hash << '\n' << "norm,U,V\n";
    for (std::size_t k = 0; k < c.norms.size(); ++k)
        out << to_string(c.norms[k]) << ',' << format_shortest(values[k].first) << ','
            << format_shortest(values[k].second) << '\n';
    return out.str();
}

void simulate(const RunConfig& c, const std::string& hash, ExecResult& result) {
    const TimeGrid tg = TimeGrid::with_steps(*c.N, c.T);
    std::ostringstream sol;
    sol << "# config-hash: " << hash << '\n';
    std::vector<EnergyRecord> records;
    std::vector<std::pair<double, double>> norms;
    if (c.dimension == 1) {
        const Grid1D grid(*c.J);
        const auto run_result = run(problem1d(c), grid, tg);
        const auto& s = run_result.final_state;
        sol << "index,x,U,V\n";
        for (int j = 0; j < grid.nodes(); ++j)
            sol << j << ',' << format_shortest(grid.x(j)) << ',' << format_shortest(s.U_curr[j]) << ','
                << format_shortest(s.V_curr[j]) << '\n';
        for (NormKind k : c.norms) norms.emplace_back(norm(s.U_curr, k), norm(s.V_curr, k));
        records = run_result.records;
    } else {
        const Grid2D grid(*c.J, c.J2.value_or(*c.J));
        RunOptions2D options;
        options.cg = cg_options(c, 1e-12);
        const auto run_result = run2d(problem2d(c), grid, tg, options);
        const auto& s = run_result.final_state;
        sol << "i,j,x,y,U,V\n";
        for (int i = 0; i < grid.nx(); ++i)
            for (int j = 0; j < grid.ny(); ++j)
                sol << i << ',' << j << ',' << format_shortest(grid.x(i)) << ',' << format_shortest(grid.y(j)) << ','
                    << format_shortest(s.U_curr(i, j)) << ',' << format_shortest(s.V_curr(i, j)) << '\n';
        for (NormKind k : c.norms) norms.emplace_back(norm(s.U_curr, k), norm(s.V_curr, k));
        records = run_result.records;
    }
    write_file(c.out_dir / "solution.csv", sol.str(), result);
    write_file(c.out_dir / "report.csv", energy_csv(records, tg, hash), result);
    if (!c.norms.empty()) write_file(c.out_dir / "norms.csv", norms_csv(c, norms, hash), result);
    check_records(c, records, result);
}

void study(const RunConfig& c, const std::string& hash, ExecResult& result) {
    StudyOptions options;
    if (c.cg_tol) options.cg.tol = *c.cg_tol;
    ConvergenceReport report;
    if (c.command == Command::temporal_study) {
        report = c.dimension == 1 ? temporal_study(problem1d(c), *c.J, c.N_list)
                                  : temporal_study(problem2d(c), *c.J, c.N_list, options);
    } else {
        const int steps = c.spatial_steps();
        report = c.dimension == 1 ? spatial_study(problem1d(c), steps, c.J_list)
                                  : spatial_study(problem2d(c), steps, c.J_list, options);
    }
    report.note = std::string("profile: ") + to_string(c.profile) + ", T = " + format_shortest(c.T) +
                  ", config-hash: " + hash;
    if (c.dimension == 2) report.note += ", CG tolerance " + format_shortest(options.cg.tol);
    write_file(c.out_dir / "report.csv", to_csv(report, hash), result);
    write_file(c.out_dir / "report.md", to_markdown(report), result);
}

void energy(const RunConfig& c, const std::string& hash, ExecResult& result) {
    const TimeGrid tg = TimeGrid::with_steps(*c.N, c.T);
    std::vector<EnergyRecord> records;
    std::string caption;
    if (c.dimension == 1) {
        records = energy_study(problem1d(c), Grid1D(*c.J), tg);
        caption = "1D energy, J = " + std::to_string(*c.J);
    } else {
        StudyOptions options;
        options.cg = cg_options(c, 1e-12);
        records = energy_study(problem2d(c), Grid2D(*c.J, c.J2.value_or(*c.J)), tg, options);
        caption = "2D energy, J = " + std::to_string(*c.J);
    }
    caption += ", N = " + std::to_string(*c.N) + ", P(z) = " + c.make_law().name();
    std::vector<double> E;
    E.reserve(records.size());
    for (const auto& r : records) E.push_back(r.E);
    write_file(c.out_dir / "report.csv", energy_csv(records, tg, hash), result);
    write_file(c.out_dir / "energy.svg", energy_svg(E, caption), result);
    check_records(c, records, result);
}

void law_check(const RunConfig& c, const std::string& hash, ExecResult& result) {
    const DampingLaw law = c.make_law();
    const LawValidation v = validate_law(law, c.z_max, c.samples);
    std::ostringstream out;
    out << "# config-hash: " << hash << '\n' << "item,z,value,limit\n";
    out << "p0,," << format_shortest(law.p0()) << ",\n";
    out << "min_value,," << format_shortest(v.min_value) << ",\n";
    out << "max_value,," << format_shortest(v.max_value) << ",\n";
    out << "min_slope,," << format_shortest(v.min_slope) << ",\n";
    out << "max_slope,," << format_shortest(v.max_slope) << ","
        << (law.lipschitz() ? format_shortest(*law.lipschitz()) : std::string()) << '\n';
    std::map<LawViolation::Kind, std::pair<int, double>> summary;  // count, first z
    for (const auto& viol : v.violations) {
        out << to_string(viol.kind) << ',' << format_shortest(viol.z) << ',' << format_shortest(viol.value) << ','
            << format_shortest(viol.limit) << '\n';
        auto [it, fresh] = summary.try_emplace(viol.kind, 0, viol.z);
        ++it->second.first;
    }
    for (const auto& [kind, info] : summary) {
        result.status = 1;
        result.diagnostics.push_back(std::string("law ") + law.name() + ": " + to_string(kind) + " violated at " +
                                     std::to_string(info.first) + " samples, first z=" +
                                     format_shortest(info.second));
    }
    write_file(c.out_dir / "report.csv", out.str(), result);
}

}  // namespace

std::string energy_svg(const std::vector<double>& energies, const std::string& caption) {
    constexpr double width = 640, height = 420, left = 80, right = 20, top = 20, bottom = 70;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    double lo = 0.0, hi = 0.0;
    if (!energies.empty()) {
        lo = *std::min_element(energies.begin(), energies.end());
        hi = *std::max_element(energies.begin(), energies.end());
    }
    if (hi - lo <= 0.0) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double n_max = energies.size() > 1 ? static_cast<double>(energies.size() - 1) : 1.0;
    char buf[160];
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", left,
                  top + plot_h, left + plot_w, top + plot_h);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", left, top,
                  left, top + plot_h);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%.4g</text>\n", left - 6, top + 4,
                  hi);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%.4g</text>\n", left - 6,
                  top + plot_h + 4, lo);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">0</text>\n", left,
                  top + plot_h + 16);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%.0f</text>\n", left + plot_w,
                  top + plot_h + 16, n_max);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">n</text>\n", left + plot_w / 2,
                  top + plot_h + 32);
    svg << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" transform=\"rotate(-90 %g %g)\">energy</text>\n",
                  left - 50, top + plot_h / 2, left - 50, top + plot_h / 2);
    svg << buf;
    svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < energies.size(); ++k) {
        const double px = left + plot_w * static_cast<double>(k) / n_max;
        const double py = top + plot_h * (hi - energies[k]) / (hi - lo);
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", k ? " " : "", px, py);
        svg << buf;
    }
    svg << "\"/>\n";
    std::string text;
    for (char ch : caption) {
        if (ch == '<') text += "&lt;";
        else if (ch == '>') text += "&gt;";
        else if (ch == '&') text += "&amp;";
        else text += ch;
    }
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">", width / 2, height - 12);
    svg << buf << text << "</text>\n</svg>\n";
    return svg.str();
}

ExecResult execute(const RunConfig& config) {
    validate(config);
    prepare_dir(config.out_dir);
    const std::string hash = config_hash(config);
    ExecResult result;
    switch (config.command) {
    case Command::simulate: simulate(config, hash, result); break;
    case Command::temporal_study:
    case Command::spatial_study: study(config, hash, result); break;
    case Command::energy_study: energy(config, hash, result); break;
    case Command::validate_law: law_check(config, hash, result); break;
    }
    return result;
}

}  // namespace dampedeb::cli
