#pragma once

#include "dampedeb/damping.hpp"
#include "dampedeb/expr.hpp"
#include "dampedeb/mesh.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dampedeb::cli {

enum class Command { simulate, temporal_study, spatial_study, energy_study, validate_law };
enum class Profile { paper, fast };

const char* to_string(Command c);
const char* to_string(Profile p);
/// Throws ConfigError for an unknown name.
Command parse_command(std::string_view name);
Profile parse_profile(std::string_view name);

/// Settings of one invocation. Optional fields are absent when the file
/// leaves them out; `validate` decides which ones a command needs.
struct RunConfig {
    Command command = Command::simulate;
    Profile profile = Profile::paper;

    int dimension = 1;
    std::optional<expr::Expression> u0;
    expr::Expression u1;
    expr::Expression f;
    std::optional<expr::Expression> lap_u0;
    std::optional<expr::Expression> bilap_u0;
    std::optional<std::string> law;
    std::optional<double> p0;
    std::optional<double> lipschitz;

    std::optional<int> J;
    std::optional<int> J2;

    double T = 1.0;
    std::optional<int> N;  // number of time steps, tau = T / N

    std::vector<int> N_list;
    std::vector<int> J_list;
    std::optional<int> fast_N;
    std::optional<double> cg_tol;
    double z_max = 100.0;
    int samples = 1000;

    std::filesystem::path out_dir = "out";
    std::vector<NormKind> norms;

    /// Normalized `section.key=value` lines in sorted order; hashed into
    /// every CSV.
    std::vector<std::string> canonical;

    DampingLaw make_law() const;
    /// Step count used by spatial studies under the active profile.
    int spatial_steps() const;
};

/// Parses the sectioned `key = value` format. Command and profile are taken
/// from the arguments, not the file.
RunConfig parse_config(std::istream& in, Command command, Profile profile = Profile::paper);
RunConfig load_config(const std::filesystem::path& path, Command command, Profile profile = Profile::paper);

/// Throws ConfigError when a field required by the command is missing or
/// the combination is inconsistent.
void validate(const RunConfig& config);

/// 16 hex digits of FNV-1a over the canonical lines, command and profile.
std::string config_hash(const RunConfig& config);

struct ExecResult {
    int status = 0;
    std::vector<std::filesystem::path> artifacts;
    std::vector<std::string> diagnostics;
};

/// Runs the command and writes its artifacts under config.out_dir.
/// Check failures (energy increase, stability bound, law validation) set a
/// nonzero status; I/O and solver failures throw.
ExecResult execute(const RunConfig& config);

/// Single-polyline SVG of E^n against n with axes labels and a caption.
std::string energy_svg(const std::vector<double>& energies, const std::string& caption);

}  // namespace dampedeb::cli
