#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pxlap/cli.hpp"

using namespace pxlap;

namespace {

RunConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int config_error_line(const std::string& text) {
    try {
        parse_text(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("config parsing accepts the documented vocabulary") {
    RunConfig cfg = parse_text(
        "# solve setup\n"
        "domain = interval 0 1\n"
        "\n"
        "n = 64\n"
        "p = 2 + x\n"
        "phi = 0\n"
        "f = 1\n"
        "residual_tol = 1e-10\n"
        "max_iterations = 50\n"
        "reg_initial = 1e-3\n"
        "reg_final = 1e-9\n"
        "armijo_c = 1e-3\n"
        "backtrack_factor = 0.25\n"
        "direction = increasing\n"
        "count = 4\n"
        "c1 = 0.5\n");
    REQUIRE(cfg.domain.has_value());
    const Interval& iv = std::get<Interval>(*cfg.domain);
    CHECK(iv.a == 0.0);
    CHECK(iv.b == 1.0);
    CHECK(cfg.n == 64);
    CHECK(cfg.p_expr == "2 + x");
    CHECK(cfg.phi_expr == "0");
    CHECK(cfg.f_expr == "1");
    CHECK(cfg.solver.residual_tol == 1e-10);
    CHECK(cfg.solver.max_iterations == 50);
    CHECK(cfg.solver.reg_initial == 1e-3);
    CHECK(cfg.solver.reg_final == 1e-9);
    CHECK(cfg.solver.armijo_c == 1e-3);
    CHECK(cfg.solver.backtrack_factor == 0.25);
    CHECK(cfg.direction == ScheduleDirection::increasing);
    CHECK(cfg.count == 4);
    CHECK(cfg.c1 == 0.5);
}

TEST_CASE("config defaults and rectangles") {
    RunConfig cfg = parse_text("domain = rectangle 0 0 2 1\nn = 8\np = 2\nf = 1\n");
    const Rectangle& rect = std::get<Rectangle>(*cfg.domain);
    CHECK(rect.ax == 0.0);
    CHECK(rect.bx == 2.0);
    CHECK(rect.by == 1.0);
    CHECK_FALSE(cfg.phi_expr.has_value());
    SolverOptions defaults;
    CHECK(cfg.solver.residual_tol == defaults.residual_tol);
    CHECK(cfg.solver.max_iterations == defaults.max_iterations);
}

TEST_CASE("later assignments win") {
    RunConfig cfg = parse_text("n = 8\nn = 16\n");
    CHECK(cfg.n == 16);
}

TEST_CASE("config errors carry line numbers") {
    CHECK(config_error_line("n = 8\nwidth = 3\n") == 2);
    CHECK(config_error_line("n = -3\n") == 1);
    CHECK(config_error_line("n = eight\n") == 1);
    CHECK(config_error_line("domain = interval 1\n") == 1);
    CHECK(config_error_line("domain = triangle 0 0 1 1\n") == 1);
    CHECK(config_error_line("p = 2 +\n") == 1);
    CHECK(config_error_line("n 8\n") == 1);
    CHECK(config_error_line("\n\ndirection = sideways\n") == 3);
    CHECK(config_error_line("backtrack_factor = 1.5\n") == 1);
    CHECK(config_error_line("armijo_c = 0\n") == 1);

    try {
        parse_text("count = 0\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 1") == 0);
    }
}

TEST_CASE("rectangle must have positive extent") {
    CHECK(config_error_line("domain = rectangle 0 0 0 1\n") == 1);
    CHECK(config_error_line("domain = interval 1 1\n") == 1);
}

TEST_CASE("format_real round-trips doubles") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(3.0) == "3");
    CHECK(format_real(-1.25e-8) == "-1.2499999999999999e-08");
}

TEST_CASE("norm command prints the Luxemburg norm") {
    RunConfig cfg = parse_text("domain = interval 0 1\nn = 16\np = 2\nf = 3\n");
    std::ostringstream out, err;
    int status = dispatch(Command::norm, cfg, out, err);
    CHECK(status == 0);
    CHECK(err.str().empty());
    CHECK(std::stod(out.str()) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(out.str().back() == '\n');
}

TEST_CASE("norm command reports missing keys") {
    RunConfig cfg = parse_text("domain = interval 0 1\nn = 16\nf = 3\n");
    std::ostringstream out, err;
    int status = dispatch(Command::norm, cfg, out, err);
    CHECK(status == 1);
    CHECK(err.str().find("error: norm:") == 0);
    CHECK(err.str().find("'p'") != std::string::npos);
}

TEST_CASE("solve command writes the solution csv") {
    RunConfig cfg = parse_text("domain = interval 0 1\nn = 8\np = 2\nphi = 0\nf = 1\n");
    cfg.out_path = temp_path("pxlap_test_solve.csv");
    std::ostringstream out, err;
    int status = dispatch(Command::solve, cfg, out, err);
    REQUIRE(status == 0);

    std::istringstream csv(slurp(cfg.out_path));
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "vertex_id,x,y,w");
    int rows = 0;
    std::string last;
    while (std::getline(csv, line)) {
        ++rows;
        last = line;
    }
    CHECK(rows == 10);  // 9 vertices + summary
    CHECK(last.rfind("summary,", 0) == 0);
    std::remove(cfg.out_path.c_str());
}

TEST_CASE("stability command writes the diagnostics csv") {
    RunConfig cfg = parse_text(
        "domain = interval 0 1\nn = 32\np = 2\nphi = 0\nf = 1\n"
        "direction = increasing\ncount = 2\nc1 = 0.4\n");
    cfg.out_path = temp_path("pxlap_test_stability.csv");
    std::ostringstream out, err;
    int status = dispatch(Command::stability, cfg, out, err);
    REQUIRE(status == 0);

    std::istringstream csv(slurp(cfg.out_path));
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line ==
          "i,sup_gap,D_grad_modular,lux_norm_diff,energy_modular_i,energy_modular_limit,"
          "modular_gap");
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 2);
    std::remove(cfg.out_path.c_str());
}

TEST_CASE("stability command requires the schedule keys") {
    RunConfig cfg = parse_text("domain = interval 0 1\nn = 32\np = 2\nphi = 0\nf = 1\n");
    cfg.out_path = temp_path("pxlap_test_stability_missing.csv");
    std::ostringstream out, err;
    CHECK(dispatch(Command::stability, cfg, out, err) == 1);
    CHECK(err.str().find("error: stability:") == 0);
    CHECK(err.str().find("'direction'") != std::string::npos);
}

TEST_CASE("check command is deterministic per seed") {
    RunConfig cfg;
    cfg.suite = "holder";
    cfg.trials = 25;
    cfg.seed = 11;

    std::string path_a = temp_path("pxlap_test_check_a.csv");
    std::string path_b = temp_path("pxlap_test_check_b.csv");
    std::ostringstream out, err;

    cfg.out_path = path_a;
    REQUIRE(dispatch(Command::check, cfg, out, err) == 0);
    cfg.out_path = path_b;
    REQUIRE(dispatch(Command::check, cfg, out, err) == 0);

    std::string a = slurp(path_a), b = slurp(path_b);
    CHECK(a == b);

    std::istringstream csv(a);
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "check_name,trial,lhs,rhs,satisfied");
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 25);

    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
}

TEST_CASE("check command rejects unknown suites") {
    RunConfig cfg;
    cfg.suite = "fourier";
    cfg.trials = 5;
    cfg.seed = 1;
    cfg.out_path = temp_path("pxlap_test_check_bad.csv");
    std::ostringstream out, err;
    CHECK(dispatch(Command::check, cfg, out, err) == 1);
    CHECK(err.str().find("error: check:") == 0);
}

TEST_CASE("solve failures surface as one error line") {
    RunConfig cfg = parse_text(
        "domain = interval 0 1\nn = 64\np = 3\nphi = 0\nf = 1\nmax_iterations = 1\n");
    cfg.out_path = temp_path("pxlap_test_solve_fail.csv");
    std::ostringstream out, err;
    CHECK(dispatch(Command::solve, cfg, out, err) == 1);
    CHECK(err.str().find("error: solve:") == 0);
}
