#include "dampedeb/cli.hpp"
#include "dampedeb/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dampedeb;
using namespace dampedeb::cli;
namespace fs = std::filesystem;

#ifndef DAMPEDEB_CONFIG_DIR
#error "DAMPEDEB_CONFIG_DIR must point at the bundled configs"
#endif

namespace {

RunConfig from_text(const std::string& text, Command c = Command::simulate) {
    std::istringstream in(text);
    return parse_config(in, c);
}

int error_line(const std::string& text, Command c = Command::simulate) {
    try {
        validate(from_text(text, c));
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("dampedeb-cli-" + name);
    fs::remove_all(dir);
    return dir;
}

const std::string zero_1d = R"(
[problem]
u0 = "0"
u1 = "0"
f = "0"
law = sqrt
[grid]
J = 4
[time]
N = 8
[study]
N_list = 4, 8
J_list = 4, 8
)";

}  // namespace

TEST_CASE("bundled configs load") {
    const fs::path dir = DAMPEDEB_CONFIG_DIR;
    const auto c1 = load_config(dir / "example1.cfg", Command::temporal_study);
    CHECK(c1.dimension == 1);
    CHECK(c1.u0->to_string() == expr::parse("sin(pi*x)").to_string());
    CHECK(c1.f.eval(0.5, 0, 2) == doctest::Approx(8.0));
    CHECK(*c1.law == "sqrt");
    CHECK(c1.T == 1.0);
    CHECK(c1.N_list == std::vector<int>{128, 256, 512, 1024});
    validate(c1);

    const auto c2 = load_config(dir / "example2.cfg", Command::spatial_study, Profile::fast);
    CHECK(c2.dimension == 2);
    CHECK(c2.u0->eval(0.5, 0.5, 0) == doctest::Approx(1.0));
    CHECK(c2.spatial_steps() == 2000);
    validate(c2);
    CHECK(load_config(dir / "example2.cfg", Command::spatial_study).spatial_steps() == 10000);

    for (const auto& entry : fs::directory_iterator(dir)) {
        const bool law_only = entry.path().filename().string().rfind("law_", 0) == 0;
        CHECK_NOTHROW(validate(load_config(entry.path(), law_only ? Command::validate_law : Command::simulate)));
    }
}

TEST_CASE("config errors name the key and line") {
    CHECK(error_line("[problem]\nu0 = 1\nlaw = sqrt\nbogus = 2\n") == 4);
    CHECK(error_line("[problem]\n[nowhere]\n") == 2);
    CHECK(error_line("u0 = 1\n") == 1);
    CHECK(error_line("[problem]\nu0 = \"sin(pi*x\"\n") == 2);
    CHECK(error_line("[problem]\nu0 = \"sin(x)\n") == 2);
    CHECK(error_line("[grid]\nJ = 0\n") == 2);
    CHECK(error_line("[grid]\nJ = 2.5\n") == 2);
    CHECK(error_line("[grid]\nJ = x\n") == 2);
    CHECK(error_line("[time]\nT = 1\nT = 2\n") == 3);
    CHECK(error_line("[problem]\ndimension = 3\n") == 2);
    CHECK(error_line("[problem]\njust text\n") == 2);
    CHECK(error_line("[output]\nnorms = L2, Q\n") == 2);

    try {
        validate(from_text("[problem]\nlaw = sqrt\n[grid]\nJ = 4\n[time]\nN = 8\n"));
        FAIL("expected a missing-key error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("u0") != std::string::npos);
    }
    CHECK_THROWS_AS(validate(from_text("[problem]\nu0 = \"x\"\n[grid]\nJ = 4\n[time]\nN = 8\n")), ConfigError);
}

TEST_CASE("inconsistent combinations") {
    const std::string base = "[problem]\nu0 = \"sin(pi*x)\"\nlaw = sqrt\n[grid]\nJ = 4\n[time]\nN = 8\n";
    CHECK_THROWS_AS(validate(from_text(base + "[output]\nnorms = E\n")), ConfigError);
    CHECK_NOTHROW(validate(from_text(base + "[output]\nnorms = L2, A, B\n")));
    CHECK_THROWS_AS(validate(from_text("[problem]\nu0 = \"y\"\nlaw = sqrt\n[grid]\nJ = 4\n[time]\nN = 8\n")),
                    ConfigError);
    CHECK_THROWS_AS(validate(from_text("[problem]\ndimension = 2\nu0 = \"x\"\nlaw = sqrt\n[grid]\nJ = 4\n[time]\nN = "
                                       "8\n[output]\nnorms = B\n")),
                    ConfigError);
    CHECK_THROWS_AS(validate(from_text(base + "[study]\ncg_tol = 1e-10\n")), ConfigError);
    CHECK_THROWS_AS(validate(from_text("[problem]\nu0 = \"x\"\nlap_u0 = \"0\"\nlaw = sqrt\n[grid]\nJ = 4\n[time]\nN = 8\n")),
                    ConfigError);
    CHECK_THROWS_AS(validate(from_text(base, Command::temporal_study)), ConfigError);
    CHECK_THROWS_AS(validate(from_text(base, Command::spatial_study)), ConfigError);
    CHECK_THROWS_AS(validate(from_text("[problem]\nlaw = \"1 + w\"\n", Command::validate_law)), SyntaxError);
    CHECK_NOTHROW(validate(from_text("[problem]\nlaw = \"1 + z\"\n", Command::validate_law)));
}

TEST_CASE("numeric values accept constant expressions") {
    const auto c = from_text("[time]\nT = 1/2\nN = 2^7\n[study]\nN_list = 2^3, 2^4\n");
    CHECK(c.T == 0.5);
    CHECK(*c.N == 128);
    CHECK(c.N_list == std::vector<int>{8, 16});
}

TEST_CASE("config hash depends on content, command and profile") {
    const auto a = from_text(zero_1d);
    const auto b = from_text("# comment\n" + zero_1d + "\n");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    CHECK(config_hash(a) != config_hash(from_text(zero_1d, Command::energy_study)));
    std::istringstream in(zero_1d);
    CHECK(config_hash(a) != config_hash(parse_config(in, Command::simulate, Profile::fast)));
    CHECK(config_hash(a) != config_hash(from_text(zero_1d + "[output]\nnorms = L2\n")));
}

TEST_CASE("commands write their artifacts") {
    const fs::path dir = DAMPEDEB_CONFIG_DIR;
    auto c = load_config(dir / "example1.cfg", Command::temporal_study);
    c.N_list = {16, 32};
    c.J = 8;
    c.out_dir = scratch("temporal");
    auto r = execute(c);
    CHECK(r.status == 0);
    const auto csv = slurp(c.out_dir / "report.csv");
    CHECK(csv.rfind("# config-hash: " + config_hash(c) + "\nkind,", 0) == 0);
    CHECK(fs::exists(c.out_dir / "report.md"));
    const auto again = execute(c);
    CHECK(slurp(c.out_dir / "report.csv") == csv);

    auto e = load_config(dir / "energy1d.cfg", Command::energy_study);
    e.N = 256;
    e.out_dir = scratch("energy");
    r = execute(e);
    CHECK(r.status == 0);
    const auto svg = slurp(e.out_dir / "energy.svg");
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("N = 256") != std::string::npos);

    auto s = load_config(dir / "example1.cfg", Command::simulate);
    s.J = 4;
    s.N = 16;
    s.norms = {NormKind::L2, NormKind::B};
    s.out_dir = scratch("simulate");
    r = execute(s);
    CHECK(r.status == 0);
    const auto sol = slurp(s.out_dir / "solution.csv");
    CHECK(sol.find("index,x,U,V\n0,0,0,0\n") != std::string::npos);
    CHECK(fs::exists(s.out_dir / "norms.csv"));

    auto l = load_config(dir / "law_custom.cfg", Command::validate_law);
    l.out_dir = scratch("law");
    r = execute(l);
    CHECK(r.status != 0);
    CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("unwritable output directory") {
    const auto blocker = scratch("blocker");
    std::ofstream(blocker) << "file";
    auto c = from_text(zero_1d);
    c.out_dir = blocker / "sub";
    CHECK_THROWS_AS(execute(c), Error);
    fs::remove(blocker);
}

TEST_CASE("svg escapes its caption") {
    const std::vector<double> E{1.0, 0.5, 0.25};
    CHECK(energy_svg(E, "a < b").find("a &lt; b") != std::string::npos);
    CHECK(energy_svg({}, "empty").find("</svg>") != std::string::npos);
}
