#pragma once

#include "dampedeb/mesh.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dampedeb {

/// Damping law P(z) applied to the squared discrete Laplacian norm.
///
/// `p0` is the claimed lower bound of P on z >= 0 and `lipschitz`, when set,
/// the claimed bound on P'. Neither is enforced on evaluation; see validate_law.
class DampingLaw {
public:
    DampingLaw(std::string name, std::function<double(double)> P, double p0,
               std::optional<double> lipschitz = std::nullopt);

    /// P(z) = c
    static DampingLaw constant(double c);
    /// P(z) = 1 + z
    static DampingLaw linear();
    /// P(z) = sqrt(1 + z)
    static DampingLaw sqrt_law();
    /// One-variable expression in z. p0 defaults to P(0).
    static DampingLaw from_expression(const std::string& source, std::optional<double> p0 = std::nullopt,
                                      std::optional<double> lipschitz = std::nullopt);
    /// "linear", "sqrt", "constant(<c>)" or an expression in z.
    static DampingLaw from_spec(const std::string& spec, std::optional<double> p0 = std::nullopt,
                                std::optional<double> lipschitz = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    double p0() const noexcept { return p0_; }
    std::optional<double> lipschitz() const noexcept { return lipschitz_; }
    /// True when P does not depend on z (the damping coefficient is fixed).
    bool is_constant() const noexcept { return constant_; }

    double operator()(double z) const { return P_(z); }

private:
    std::string name_;
    std::function<double(double)> P_;
    double p0_;
    std::optional<double> lipschitz_;
    bool constant_ = false;
};

/// Composite Simpson sum over panels [x_{2j-2}, x_{2j}] of an odd-length sample.
double simpson_1d(std::span<const double> values, double h);

enum class SimpsonForm {
    /// Reduced four-point sum valid for integrands that vanish on the boundary.
    reduced,
    /// Full tensor-product panel rule.
    nine_point,
};

/// Two-dimensional composite Simpson rule on an nx x ny node array stored
/// row-major in x (value(i, j) = values[i * ny + j]); both counts odd.
double simpson_2d_sixpoint(std::span<const double> values, int nx, int ny, double h1, double h2,
                           SimpsonForm form = SimpsonForm::reduced);

/// P(||V||_B^2)
double q_coefficient(const GridFn1D& V, const DampingLaw& law);
/// P(||V||_F^2)
double q_coefficient(const GridFn2D& V, const DampingLaw& law);

struct LawViolation {
    enum class Kind { lower_bound, monotonicity, lipschitz };
    Kind kind;
    double z;
    double value;   // P(z), or the offending slope
    double limit;   // p0, 0, or L
};

const char* to_string(LawViolation::Kind kind);

struct LawValidation {
    double z_max = 0.0;
    int samples = 0;
    double min_value = 0.0;   // empirical lower bound of P on the samples
    double max_value = 0.0;
    double max_slope = 0.0;   // empirical Lipschitz estimate
    double min_slope = 0.0;
    std::vector<LawViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Samples P on [0, z_max] and reports violations of P >= p0, monotone
/// nondecrease, and the Lipschitz bound when the law carries one.
LawValidation validate_law(const DampingLaw& law, double z_max, int samples);

}  // namespace dampedeb
