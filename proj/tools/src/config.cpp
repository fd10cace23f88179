#include "dampedeb/cli.hpp"
#include "dampedeb/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace dampedeb::cli {

const char* to_string(Command c) {
    switch (c) {
    case Command::simulate: return "simulate";
    case Command::temporal_study: return "temporal-study";
    case Command::spatial_study: return "spatial-study";
    case Command::energy_study: return "energy-study";
    case Command::validate_law: return "validate-law";
    }
    return "?";
}

const char* to_string(Profile p) { return p == Profile::paper ? "paper" : "fast"; }

Command parse_command(std::string_view name) {
    for (Command c : {Command::simulate, Command::temporal_study, Command::spatial_study, Command::energy_study,
                      Command::validate_law})
        if (name == to_string(c)) return c;
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

Profile parse_profile(std::string_view name) {
    if (name == "paper") return Profile::paper;
    if (name == "fast") return Profile::fast;
    throw ConfigError("unknown profile '" + std::string(name) + "' (expected paper or fast)");
}

DampingLaw RunConfig::make_law() const {
    if (!law) throw ConfigError("missing key 'law' in [problem]");
    return DampingLaw::from_spec(*law, p0, lipschitz);
}

int RunConfig::spatial_steps() const {
    if (!N) throw ConfigError("missing key 'N' in [time]");
    if (profile == Profile::fast) return fast_N ? *fast_N : std::max(2, *N / 2);
    return *N;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (line[k] == '"') quoted = !quoted;
        else if (line[k] == '#' && !quoted) return line.substr(0, k);
    }
    return line;
}

double number(const std::string& text, const std::string& key, int line) {
    try {
        const auto e = expr::parse(text);
        if (e.depends_on(expr::Var::x) || e.depends_on(expr::Var::y) || e.depends_on(expr::Var::t))
            throw ConfigError("'" + key + "' must be a constant", line);
        return e.eval(0.0, 0.0, 0.0);
    } catch (const SyntaxError& err) {
        throw ConfigError("'" + key + "': " + err.what(), line);
    } catch (const DomainError& err) {
        throw ConfigError("'" + key + "': " + err.what(), line);
    }
}

double positive(const std::string& text, const std::string& key, int line) {
    const double v = number(text, key, line);
    if (!(v > 0.0)) throw ConfigError("'" + key + "' must be positive", line);
    return v;
}

int positive_int(const std::string& text, const std::string& key, int line) {
    const double v = positive(text, key, line);
    if (v != std::floor(v) || v > std::numeric_limits<int>::max())
        throw ConfigError("'" + key + "' must be a positive integer", line);
    return static_cast<int>(v);
}

std::vector<int> int_list(const std::string& text, const std::string& key, int line) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("'" + key + "': empty list entry", line);
        out.push_back(positive_int(item, key, line));
    }
    if (out.empty()) throw ConfigError("'" + key + "' must list at least one value", line);
    return out;
}

expr::Expression expression(const std::string& text, const std::string& key, int line) {
    try {
        return expr::parse(text);
    } catch (const SyntaxError& err) {
        throw ConfigError("'" + key + "': " + err.what() + " at offset " + std::to_string(err.offset()), line);
    }
}

NormKind norm_kind(const std::string& name, int line) {
    for (NormKind k : {NormKind::L2, NormKind::Inf, NormKind::A, NormKind::B, NormKind::E, NormKind::F})
        if (name == to_string(k)) return k;
    throw ConfigError("unknown norm '" + name + "'", line);
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
    static const std::map<std::string, std::map<std::string, Setter>> table = {
        {"problem",
         {
             {"dimension",
              [](RunConfig& c, const std::string& v, int l) {
                  c.dimension = positive_int(v, "dimension", l);
                  if (c.dimension != 1 && c.dimension != 2) throw ConfigError("'dimension' must be 1 or 2", l);
              }},
             {"u0", [](RunConfig& c, const std::string& v, int l) { c.u0 = expression(v, "u0", l); }},
             {"u1", [](RunConfig& c, const std::string& v, int l) { c.u1 = expression(v, "u1", l); }},
             {"f", [](RunConfig& c, const std::string& v, int l) { c.f = expression(v, "f", l); }},
             {"lap_u0", [](RunConfig& c, const std::string& v, int l) { c.lap_u0 = expression(v, "lap_u0", l); }},
             {"bilap_u0",
              [](RunConfig& c, const std::string& v, int l) { c.bilap_u0 = expression(v, "bilap_u0", l); }},
             {"law",
              [](RunConfig& c, const std::string& v, int l) {
                  if (v.empty()) throw ConfigError("'law' must not be empty", l);
                  c.law = v;
              }},
             {"p0", [](RunConfig& c, const std::string& v, int l) { c.p0 = positive(v, "p0", l); }},
             {"lipschitz",
              [](RunConfig& c, const std::string& v, int l) {
                  const double L = number(v, "lipschitz", l);
                  if (L < 0.0) throw ConfigError("'lipschitz' must be nonnegative", l);
                  c.lipschitz = L;
              }},
         }},
        {"grid",
         {
             {"J", [](RunConfig& c, const std::string& v, int l) { c.J = positive_int(v, "J", l); }},
             {"J2", [](RunConfig& c, const std::string& v, int l) { c.J2 = positive_int(v, "J2", l); }},
         }},
        {"time",
         {
             {"T", [](RunConfig& c, const std::string& v, int l) { c.T = positive(v, "T", l); }},
             {"N", [](RunConfig& c, const std::string& v, int l) { c.N = positive_int(v, "N", l); }},
         }},
        {"study",
         {
             {"N_list", [](RunConfig& c, const std::string& v, int l) { c.N_list = int_list(v, "N_list", l); }},
             {"J_list", [](RunConfig& c, const std::string& v, int l) { c.J_list = int_list(v, "J_list", l); }},
             {"fast_N", [](RunConfig& c, const std::string& v, int l) { c.fast_N = positive_int(v, "fast_N", l); }},
             {"cg_tol", [](RunConfig& c, const std::string& v, int l) { c.cg_tol = positive(v, "cg_tol", l); }},
             {"z_max", [](RunConfig& c, const std::string& v, int l) { c.z_max = positive(v, "z_max", l); }},
             {"samples",
              [](RunConfig& c, const std::string& v, int l) { c.samples = positive_int(v, "samples", l); }},
         }},
        {"output",
         {
             {"dir", [](RunConfig& c, const std::string& v, int) { c.out_dir = v; }},
             {"norms",
              [](RunConfig& c, const std::string& v, int l) {
                  std::stringstream ss(v);
                  std::string item;
                  while (std::getline(ss, item, ',')) c.norms.push_back(norm_kind(trim(item), l));
              }},
         }},
    };
    return table;
}

bool uses_y(const RunConfig& c) {
    auto y = [](const expr::Expression& e) { return e.depends_on(expr::Var::y); };
    return (c.u0 && y(*c.u0)) || y(c.u1) || y(c.f) || (c.lap_u0 && y(*c.lap_u0)) ||
           (c.bilap_u0 && y(*c.bilap_u0));
}

}  // namespace

RunConfig parse_config(std::istream& in, Command command, Profile profile) {
    RunConfig config;
    config.command = command;
    config.profile = profile;

    const auto& table = schema();
    const std::map<std::string, Setter>* section = nullptr;
    std::string section_name;
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(strip_comment(raw));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError("unterminated section header", line);
            section_name = trim(std::string_view(text).substr(1, text.size() - 2));
            const auto it = table.find(section_name);
            if (it == table.end()) throw ConfigError("unknown section [" + section_name + "]", line);
            section = &it->second;
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = trim(std::string_view(text).substr(0, eq));
        std::string value = trim(std::string_view(text).substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", line);
        if (!section) throw ConfigError("key '" + key + "' appears before any section header", line);
        if (value.size() >= 1 && value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') throw ConfigError("unterminated quoted value", line);
            value = value.substr(1, value.size() - 2);
        } else if (value.find('"') != std::string::npos) {
            throw ConfigError("stray quote in value of '" + key + "'", line);
        }
        const auto setter = section->find(key);
        if (setter == section->end())
            throw ConfigError("unknown key '" + key + "' in [" + section_name + "]", line);
        if (!seen.insert(section_name + "." + key).second)
            throw ConfigError("duplicate key '" + key + "' in [" + section_name + "]", line);
        setter->second(config, value, line);
        if (!(section_name == "output" && key == "dir")) config.canonical.push_back(section_name + "." + key + "=" + value);
    }
    std::sort(config.canonical.begin(), config.canonical.end());
    return config;
}

RunConfig load_config(const std::filesystem::path& path, Command command, Profile profile) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_config(in, command, profile);
}

void validate(const RunConfig& c) {
    auto missing = [](const char* key, const char* section) {
        return ConfigError(std::string("missing key '") + key + "' in [" + section + "]");
    };
    if (!c.law) throw missing("law", "problem");
    c.make_law();

    if (c.command == Command::validate_law) {
        if (c.samples < 2) throw ConfigError("'samples' must be at least 2");
        return;
    }
    if (!c.u0) throw missing("u0", "problem");
    if (c.lap_u0.has_value() != c.bilap_u0.has_value())
        throw ConfigError("'lap_u0' and 'bilap_u0' must be given together");
    if (c.dimension == 1) {
        if (c.J2) throw ConfigError("'J2' requires dimension = 2");
        if (uses_y(c)) throw ConfigError("expressions depend on y but dimension = 1");
    }
    for (NormKind k : c.norms) {
        const bool one_d = k == NormKind::A || k == NormKind::B;
        const bool two_d = k == NormKind::E || k == NormKind::F;
        if ((c.dimension == 2 && one_d) || (c.dimension == 1 && two_d))
            throw ConfigError(std::string("norm ") + to_string(k) + " is not defined in dimension " +
                              std::to_string(c.dimension));
    }
    if (c.cg_tol && c.dimension == 1) throw ConfigError("'cg_tol' requires dimension = 2");

    switch (c.command) {
    case Command::simulate:
    case Command::energy_study:
        if (!c.J) throw missing("J", "grid");
        if (!c.N) throw missing("N", "time");
        if (*c.J < 2 || (c.J2 && *c.J2 < 2)) throw ConfigError("grid sizes must be >= 2");
        break;
    case Command::temporal_study:
        if (!c.J) throw missing("J", "grid");
        if (c.N_list.empty()) throw missing("N_list", "study");
        if (*c.J < 2) throw ConfigError("grid sizes must be >= 2");
        if (c.J2 && *c.J2 != *c.J) throw ConfigError("convergence studies need J2 = J");
        break;
    case Command::spatial_study:
        if (!c.N) throw missing("N", "time");
        if (c.J_list.empty()) throw missing("J_list", "study");
        if (c.J2) throw ConfigError("convergence studies take J from J_list; remove 'J2'");
        break;
    case Command::validate_law: break;
    }
    if (!c.norms.empty() && c.command != Command::simulate)
        throw ConfigError("'norms' applies to simulate only");
}

std::string config_hash(const RunConfig& config) {
    std::uint64_t h = 14695981039346656037ull;
    auto feed = [&](std::string_view s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        h ^= '\n';
        h *= 1099511628211ull;
    };
    feed(std::string("command=") + to_string(config.command));
    feed(std::string("profile=") + to_string(config.profile));
    for (const auto& line : config.canonical) feed(line);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace dampedeb::cli
