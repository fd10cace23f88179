#include "dampedeb/damping.hpp"

#include "dampedeb/error.hpp"
#include "dampedeb/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dampedeb {

DampingLaw::DampingLaw(std::string name, std::function<double(double)> P, double p0,
                       std::optional<double> lipschitz)
    : name_(std::move(name)), P_(std::move(P)), p0_(p0), lipschitz_(lipschitz) {}

DampingLaw DampingLaw::constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("constant damping law needs c > 0");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, c);
    DampingLaw law("constant(" + std::string(buf, end) + ")", [c](double) { return c; }, c, 0.0);
    law.constant_ = true;
    return law;
}

DampingLaw DampingLaw::linear() {
    return DampingLaw("1+z", [](double z) { return 1.0 + z; }, 1.0, 1.0);
}

DampingLaw DampingLaw::sqrt_law() {
    return DampingLaw("sqrt(1+z)", [](double z) { return std::sqrt(1.0 + z); }, 1.0, 0.5);
}

DampingLaw DampingLaw::from_expression(const std::string& source, std::optional<double> p0,
                                       std::optional<double> lipschitz) {
    const auto e = expr::parse(source, {{"z", expr::Var::x}});
    if (e.depends_on(expr::Var::y) || e.depends_on(expr::Var::t))
        throw std::invalid_argument("damping law '" + source + "' may only depend on z");
    std::function<double(double)> P = [e](double z) { return e.eval(z, 0.0, 0.0); };
    const double lower = p0 ? *p0 : P(0.0);
    DampingLaw law(source, std::move(P), lower, lipschitz);
    law.constant_ = !e.depends_on(expr::Var::x);
    return law;
}

DampingLaw DampingLaw::from_spec(const std::string& spec, std::optional<double> p0,
                                 std::optional<double> lipschitz) {
    if (spec == "linear" || spec == "1+z") return linear();
    if (spec == "sqrt" || spec == "sqrt(1+z)") return sqrt_law();
    if (spec.rfind("constant(", 0) == 0 && spec.back() == ')') {
        const std::string inner = spec.substr(9, spec.size() - 10);
        return constant(expr::parse(inner).eval(0.0, 0.0, 0.0));
    }
    return from_expression(spec, p0, lipschitz);
}

double simpson_1d(std::span<const double> values, double h) {
    if (values.size() < 3 || values.size() % 2 == 0)
        throw std::invalid_argument("simpson_1d needs an odd number (>= 3) of samples");
    const std::size_t panels = (values.size() - 1) / 2;
    double sum = 0.0;
    for (std::size_t j = 1; j <= panels; ++j)
        sum += values[2 * j - 2] + 4.0 * values[2 * j - 1] + values[2 * j];
    return (h / 3.0) * sum;
}

double simpson_2d_sixpoint(std::span<const double> values, int nx, int ny, double h1, double h2,
                           SimpsonForm form) {
    if (nx < 3 || ny < 3 || nx % 2 == 0 || ny % 2 == 0)
        throw std::invalid_argument("simpson_2d_sixpoint needs odd node counts >= 3 in both directions");
    if (values.size() != static_cast<std::size_t>(nx) * ny)
        throw std::invalid_argument("simpson_2d_sixpoint: value array does not match nx * ny");
    auto at = [&](int i, int j) { return values[static_cast<std::size_t>(i) * ny + j]; };
    const int J1 = (nx - 1) / 2, J2 = (ny - 1) / 2;
    double sum = 0.0;
    for (int i = 1; i <= J1; ++i) {
        for (int j = 1; j <= J2; ++j) {
            if (form == SimpsonForm::reduced) {
                sum += 4.0 * at(2 * i - 2, 2 * j - 2) + 8.0 * at(2 * i - 2, 2 * j - 1) +
                       8.0 * at(2 * i - 1, 2 * j - 2) + 16.0 * at(2 * i - 1, 2 * j - 1);
            } else {
                static constexpr double w[3] = {1.0, 4.0, 1.0};
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) sum += w[a] * w[b] * at(2 * i - 2 + a, 2 * j - 2 + b);
            }
        }
    }
    return (h1 * h2 / 9.0) * sum;
}

double q_coefficient(const GridFn1D& V, const DampingLaw& law) {
    const double b = norm(V, NormKind::B);
    return law(b * b);
}

double q_coefficient(const GridFn2D& V, const DampingLaw& law) {
    const double f = norm(V, NormKind::F);
    return law(f * f);
}

const char* to_string(LawViolation::Kind kind) {
    switch (kind) {
        case LawViolation::Kind::lower_bound: return "lower-bound";
        case LawViolation::Kind::monotonicity: return "monotonicity";
        case LawViolation::Kind::lipschitz: return "lipschitz";
    }
    return "?";
}

LawValidation validate_law(const DampingLaw& law, double z_max, int samples) {
    if (!(z_max > 0.0)) throw std::invalid_argument("validate_law: z_max must be positive");
    if (samples < 2) throw std::invalid_argument("validate_law: need at least 2 samples");

    LawValidation report;
    report.z_max = z_max;
    report.samples = samples;
    report.min_value = std::numeric_limits<double>::infinity();
    report.max_value = -std::numeric_limits<double>::infinity();
    report.max_slope = -std::numeric_limits<double>::infinity();
    report.min_slope = std::numeric_limits<double>::infinity();

    const double dz = z_max / (samples - 1);
    double prev = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double z = k * dz;
        const double p = law(z);
        report.min_value = std::min(report.min_value, p);
        report.max_value = std::max(report.max_value, p);
        if (p < law.p0()) report.violations.push_back({LawViolation::Kind::lower_bound, z, p, law.p0()});
        if (k > 0) {
            const double slope = (p - prev) / dz;
            report.max_slope = std::max(report.max_slope, slope);
            report.min_slope = std::min(report.min_slope, slope);
            // Slopes are compared with a relative rounding allowance on the difference quotient.
            const double slack = 1e-12 * (std::abs(p) + std::abs(prev)) / dz;
            if (slope < -slack) report.violations.push_back({LawViolation::Kind::monotonicity, z, slope, 0.0});
            if (law.lipschitz() && slope > *law.lipschitz() + slack)
                report.violations.push_back({LawViolation::Kind::lipschitz, z, slope, *law.lipschitz()});
        }
        prev = p;
    }
    return report;
}

}  // namespace dampedeb
