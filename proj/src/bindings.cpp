#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pxlap/checks.hpp"
#include "pxlap/cli.hpp"
#include "pxlap/modular.hpp"
#include "pxlap/solver.hpp"
#include "pxlap/stability.hpp"

namespace py = pybind11;

using namespace pxlap;

PYBIND11_MODULE(pxlap, m) {
    m.doc() = "Variable-exponent Sobolev calculus and p(x)-Laplacian solver";

    py::class_<Expression>(m, "Expression")
        .def_static("parse", &Expression::parse, py::arg("text"))
        .def("__call__", &Expression::operator(), py::arg("x"), py::arg("y") = 0.0)
        .def_property_readonly("text", &Expression::text);

    py::class_<Mesh>(m, "Mesh")
        .def_property_readonly("dimension", &Mesh::dimension)
        .def_property_readonly("vertex_count", &Mesh::vertex_count)
        .def_property_readonly("cell_count", &Mesh::cell_count)
        .def_property_readonly("domain_measure", &Mesh::domain_measure)
        .def("is_boundary", &Mesh::is_boundary, py::arg("vertex"))
        .def("vertex", [](const Mesh& mesh, std::size_t v) {
            const Point& p = mesh.vertices().at(v);
            return std::make_pair(p.x, p.y);
        }, py::arg("vertex"))
        .def("cell_measure", &Mesh::cell_measure, py::arg("cell"))
        .def("cell_barycenter", [](const Mesh& mesh, std::size_t t) {
            Point p = mesh.cell_barycenter(t);
            return std::make_pair(p.x, p.y);
        }, py::arg("cell"));

    m.def("interval_mesh", [](double a, double b, int n) {
        return Mesh(Interval{a, b}, n);
    }, py::arg("a"), py::arg("b"), py::arg("n"));
    m.def("rectangle_mesh", [](double ax, double ay, double bx, double by, int n) {
        return Mesh(Rectangle{ax, ay, bx, by}, n);
    }, py::arg("ax"), py::arg("ay"), py::arg("bx"), py::arg("by"), py::arg("n"));

    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init([](std::vector<double> nodal) { return ScalarField{std::move(nodal)}; }),
             py::arg("nodal"))
        .def_readwrite("nodal", &ScalarField::nodal);

    py::class_<CellVectorField>(m, "CellVectorField")
        .def_readonly("dim", &CellVectorField::dim)
        .def_readonly("comps", &CellVectorField::comps);

    m.def("interpolate", &interpolate, py::arg("expression"), py::arg("mesh"));
    m.def("eval_at_barycenters", &eval_at_barycenters, py::arg("expression"), py::arg("mesh"));
    m.def("cell_values", &cell_values, py::arg("u"), py::arg("mesh"));
    m.def("gradient", &gradient, py::arg("u"), py::arg("mesh"));
    m.def("magnitudes", &magnitudes, py::arg("g"), py::arg("mesh"));
    m.def("integrate", [](const std::vector<double>& cells, const Mesh& mesh) {
        return integrate(cells, mesh);
    }, py::arg("cell_values"), py::arg("mesh"));

    py::class_<ExponentField>(m, "ExponentField")
        .def(py::init<std::vector<double>>(), py::arg("samples"))
        .def_property_readonly("samples",
                               [](const ExponentField& p) { return p.samples(); })
        .def_property_readonly("p_minus", &ExponentField::p_minus)
        .def_property_readonly("p_plus", &ExponentField::p_plus);

    m.def("build_exponent", [](const std::string& expr, const Mesh& mesh) {
        return build_exponent(expr, mesh);
    }, py::arg("expression"), py::arg("mesh"));
    m.def("conjugate", &conjugate, py::arg("p"));
    m.def("log_holder_constant", &log_holder_constant, py::arg("p"), py::arg("mesh"));

    py::enum_<ScheduleDirection>(m, "ScheduleDirection")
        .value("increasing", ScheduleDirection::increasing)
        .value("decreasing", ScheduleDirection::decreasing);

    py::class_<ExponentSchedule>(m, "ExponentSchedule")
        .def_property_readonly("direction", &ExponentSchedule::direction)
        .def_property_readonly("count", &ExponentSchedule::count)
        .def("offset", &ExponentSchedule::offset, py::arg("i"))
        .def("field", &ExponentSchedule::field, py::arg("i"))
        .def_property_readonly("base", &ExponentSchedule::base);

    m.def("make_schedule", &make_schedule, py::arg("base"), py::arg("direction"),
          py::arg("count"), py::arg("c1"));

    py::class_<NormResult>(m, "NormResult")
        .def_readonly("value", &NormResult::value)
        .def_readonly("modular_at_value", &NormResult::modular_at_value)
        .def_readonly("bisection_iterations", &NormResult::bisection_iterations);

    py::class_<GapReport>(m, "GapReport")
        .def_readonly("lhs", &GapReport::lhs)
        .def_readonly("rhs", &GapReport::rhs)
        .def_readonly("satisfied", &GapReport::satisfied);

    py::class_<NormModularReport>(m, "NormModularReport")
        .def_readonly("gap", &NormModularReport::gap)
        .def_readonly("modular_le_one", &NormModularReport::modular_le_one);

    m.def("modular", [](const std::vector<double>& f, const ExponentField& p, const Mesh& mesh) {
        return modular(f, p, mesh);
    }, py::arg("f_cells"), py::arg("p"), py::arg("mesh"));
    m.def("weighted_modular",
          [](const std::vector<double>& f, const ExponentField& p, const Mesh& mesh) {
              return weighted_modular(f, p, mesh);
          }, py::arg("f_cells"), py::arg("p"), py::arg("mesh"));
    m.def("luxemburg_norm",
          [](const std::vector<double>& f, const ExponentField& p, const Mesh& mesh) {
              return luxemburg_norm(f, p, mesh);
          }, py::arg("f_cells"), py::arg("p"), py::arg("mesh"));
    m.def("sobolev_norm", &sobolev_norm, py::arg("u"), py::arg("p"), py::arg("mesh"));
    m.def("holder_gap",
          [](const std::vector<double>& u, const std::vector<double>& v,
             const ExponentField& p, const Mesh& mesh) {
              return holder_gap(u, v, p, mesh);
          }, py::arg("u_cells"), py::arg("v_cells"), py::arg("p"), py::arg("mesh"));
    m.def("epsilon_bound_gap",
          [](const std::vector<double>& f, const ExponentField& p, const ExponentField& q,
             double eps, bool weighted, const Mesh& mesh) {
              return epsilon_bound_gap(f, p, q, eps, weighted, mesh);
          }, py::arg("f_cells"), py::arg("p"), py::arg("q"), py::arg("eps"),
          py::arg("weighted"), py::arg("mesh"));
    m.def("norm_modular_gap",
          [](const std::vector<double>& u, const ExponentField& p, const Mesh& mesh) {
              return norm_modular_gap(u, p, mesh);
          }, py::arg("u_cells"), py::arg("p"), py::arg("mesh"));
    m.def("embedding_constant", &embedding_constant, py::arg("eps"), py::arg("measure"));

    py::class_<DirichletProblem>(m, "DirichletProblem")
        .def(py::init([](const Mesh& mesh, const ExponentField& p, const ScalarField& phi,
                         const ScalarField& source) {
                 DirichletProblem problem{mesh, p, phi, source};
                 validate_problem(problem);
                 return problem;
             }),
             py::arg("mesh"), py::arg("p"), py::arg("phi"), py::arg("source"))
        .def_readonly("mesh", &DirichletProblem::mesh)
        .def_readonly("p", &DirichletProblem::p)
        .def_readonly("phi", &DirichletProblem::phi)
        .def_readonly("source", &DirichletProblem::source);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("residual_tol", &SolverOptions::residual_tol)
        .def_readwrite("max_iterations", &SolverOptions::max_iterations)
        .def_readwrite("reg_initial", &SolverOptions::reg_initial)
        .def_readwrite("reg_final", &SolverOptions::reg_final)
        .def_readwrite("armijo_c", &SolverOptions::armijo_c)
        .def_readwrite("backtrack_factor", &SolverOptions::backtrack_factor);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("w", &SolveResult::w)
        .def_readonly("u", &SolveResult::u)
        .def_readonly("iterations", &SolveResult::iterations)
        .def_readonly("final_energy", &SolveResult::final_energy)
        .def_readonly("residual_norm", &SolveResult::residual_norm)
        .def_readonly("final_regularization", &SolveResult::final_regularization);

    m.def("energy", &energy, py::arg("u"), py::arg("problem"), py::arg("reg"));
    m.def("energy_gradient", &energy_gradient, py::arg("u"), py::arg("problem"), py::arg("reg"));
    m.def("weak_residual", &weak_residual, py::arg("w"), py::arg("problem"));
    m.def("solve_dirichlet",
          [](const DirichletProblem& problem, const SolverOptions& opts,
             const ScalarField* initial) {
              return solve_dirichlet(problem, opts, initial);
          },
          py::arg("problem"), py::arg("opts") = SolverOptions{},
          py::arg("initial") = static_cast<const ScalarField*>(nullptr));

    py::class_<StabilityRow>(m, "StabilityRow")
        .def_readonly("i", &StabilityRow::i)
        .def_readonly("sup_gap", &StabilityRow::sup_gap)
        .def_readonly("D_grad_modular", &StabilityRow::D_grad_modular)
        .def_readonly("lux_norm_diff", &StabilityRow::lux_norm_diff)
        .def_readonly("energy_modular_i", &StabilityRow::energy_modular_i)
        .def_readonly("energy_modular_limit", &StabilityRow::energy_modular_limit)
        .def_readonly("modular_gap", &StabilityRow::modular_gap);

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("rows", &StabilityReport::rows);

    m.def("diagnostics_row", &diagnostics_row, py::arg("w_i"), py::arg("w"), py::arg("p_i"),
          py::arg("p"), py::arg("problem"), py::arg("direction"));
    m.def("run_stability", &run_stability, py::arg("limit_problem"), py::arg("schedule"),
          py::arg("opts") = SolverOptions{});

    py::class_<CheckRow>(m, "CheckRow")
        .def_readonly("check_name", &CheckRow::check_name)
        .def_readonly("trial", &CheckRow::trial)
        .def_readonly("gap", &CheckRow::gap);

    py::class_<CheckOutcome>(m, "CheckOutcome")
        .def_readonly("rows", &CheckOutcome::rows)
        .def_readonly("all_satisfied", &CheckOutcome::all_satisfied);

    m.def("run_check_suite", [](const std::string& suite, int trials, std::uint64_t seed) {
        return run_check_suite(parse_suite_name(suite), trials, seed);
    }, py::arg("suite"), py::arg("trials"), py::arg("seed"));
}
