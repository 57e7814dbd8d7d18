#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pxlap/modular.hpp"
#include "pxlap/stability.hpp"

using namespace pxlap;

namespace {

DirichletProblem make_problem(const Mesh& mesh, const char* p, const char* phi, const char* f) {
    return DirichletProblem{mesh, build_exponent(p, mesh),
                            interpolate(Expression::parse(phi), mesh),
                            interpolate(Expression::parse(f), mesh)};
}

}  // namespace

TEST_CASE("diagnostics against the limit solution itself") {
    Mesh mesh(Interval{0.0, 1.0}, 32);
    DirichletProblem problem = make_problem(mesh, "2", "0", "1");
    SolveResult r = solve_dirichlet(problem);

    StabilityRow row = diagnostics_row(r.w, r.w, problem.p, problem.p, problem,
                                       ScheduleDirection::increasing);
    CHECK(row.D_grad_modular == 0.0);
    CHECK(row.modular_gap == 0.0);

    CellVectorField gw = gradient(r.w, mesh);
    std::vector<double> mags = magnitudes(gw, mesh);
    CHECK(row.energy_modular_i ==
          doctest::Approx(modular(mags, problem.p, mesh) / 2.0).epsilon(1e-15));
    CHECK(row.energy_modular_i == doctest::Approx(row.energy_modular_limit).epsilon(1e-15));
}

TEST_CASE("stability run on a p(x)-harmonic datum stays flat") {
    Mesh mesh(Rectangle{0.0, 0.0, 1.0, 1.0}, 8);
    DirichletProblem problem = make_problem(mesh, "2", "x", "0");
    ExponentSchedule schedule = make_schedule(problem.p, ScheduleDirection::increasing, 3, 0.3);
    SolverOptions opts;
    opts.residual_tol = 1e-12;

    StabilityReport report = run_stability(problem, schedule, opts);
    REQUIRE(report.rows.size() == 3);
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const StabilityRow& row = report.rows[k];
        CHECK(row.i == static_cast<int>(k) + 1);
        CHECK(row.sup_gap == doctest::Approx(0.3 / row.i).epsilon(1e-15));
        CHECK(row.D_grad_modular <= 1e-10);
        CHECK(row.lux_norm_diff <= 1e-9);
        // |grad w_i| = |grad w| = 1, so both unweighted modulars equal the area
        CHECK(row.modular_gap <= 1e-10);
        CHECK(row.energy_modular_i > row.energy_modular_limit);
    }
}

TEST_CASE("degenerate schedule reproduces the limit run up to solver noise") {
    Mesh mesh(Interval{0.0, 1.0}, 32);
    DirichletProblem problem = make_problem(mesh, "2.5", "x*(1-x)", "1");
    ExponentSchedule schedule =
        make_schedule(problem.p, ScheduleDirection::increasing, 2, 1e-13);
    SolverOptions opts;

    StabilityReport report = run_stability(problem, schedule, opts);
    double noise = 10.0 * opts.residual_tol;
    for (const StabilityRow& row : report.rows) {
        CHECK(row.sup_gap <= 1e-13);
        CHECK(row.D_grad_modular <= noise);
        CHECK(row.lux_norm_diff <= noise);
        CHECK(row.modular_gap <= noise);
        CHECK(std::abs(row.energy_modular_i - row.energy_modular_limit) <= noise);
    }
}

TEST_CASE("increasing schedule convergence trends") {
    Mesh mesh(Interval{0.0, 1.0}, 128);
    DirichletProblem problem = make_problem(mesh, "2", "0", "1");
    ExponentSchedule schedule = make_schedule(problem.p, ScheduleDirection::increasing, 12, 0.5);

    StabilityReport report = run_stability(problem, schedule, {});
    REQUIRE(report.rows.size() == 12);
    const StabilityRow& first = report.rows.front();
    const StabilityRow& last = report.rows.back();

    for (std::size_t k = 1; k < report.rows.size(); ++k) {
        CHECK(report.rows[k].D_grad_modular <= report.rows[k - 1].D_grad_modular * (1 + 1e-9));
        CHECK(report.rows[k].lux_norm_diff <= report.rows[k - 1].lux_norm_diff * (1 + 1e-9));
        CHECK(report.rows[k].modular_gap <= report.rows[k - 1].modular_gap * (1 + 1e-9));
    }
    CHECK(last.D_grad_modular <= std::max(1e-3, first.D_grad_modular / 10.0));
    CHECK(last.lux_norm_diff <= std::max(1e-3, first.lux_norm_diff / 10.0));
    CHECK(last.modular_gap <= std::max(1e-3, first.modular_gap / 10.0));
}

TEST_CASE("decreasing schedule convergence trends") {
    Mesh mesh(Interval{0.0, 1.0}, 128);
    DirichletProblem problem = make_problem(mesh, "2", "0", "1");
    ExponentSchedule schedule = make_schedule(problem.p, ScheduleDirection::decreasing, 12, 0.5);

    StabilityReport report = run_stability(problem, schedule, {});
    REQUIRE(report.rows.size() == 12);
    for (std::size_t k = 1; k < report.rows.size(); ++k)
        CHECK(report.rows[k].D_grad_modular <= report.rows[k - 1].D_grad_modular * (1 + 1e-9));
    CHECK(report.rows.back().D_grad_modular <=
          std::max(1e-3, report.rows.front().D_grad_modular / 10.0));
}

TEST_CASE("schedule base must match the problem exponent") {
    Mesh mesh(Interval{0.0, 1.0}, 16);
    DirichletProblem problem = make_problem(mesh, "2", "0", "1");
    ExponentField other = build_exponent("2.1", mesh);
    ExponentSchedule schedule = make_schedule(other, ScheduleDirection::increasing, 2, 0.3);
    CHECK_THROWS_AS(run_stability(problem, schedule, {}), std::invalid_argument);
}

TEST_CASE("solver failures are tagged with the schedule index") {
    Mesh mesh(Interval{0.0, 1.0}, 64);
    DirichletProblem problem = make_problem(mesh, "2", "0", "1");
    ExponentSchedule schedule = make_schedule(problem.p, ScheduleDirection::increasing, 2, 0.5);
    SolverOptions opts;
    opts.max_iterations = 1;
    try {
        run_stability(problem, schedule, opts);
        FAIL("expected SolveFailure");
    } catch (const SolveFailure& e) {
        CHECK(std::string(e.what()).find("schedule index 1") != std::string::npos);
    }
}
