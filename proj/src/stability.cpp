#include "pxlap/stability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pxlap/modular.hpp"

namespace pxlap {

StabilityRow diagnostics_row(const ScalarField& w_i, const ScalarField& w,
                             const ExponentField& p_i, const ExponentField& p,
                             const DirichletProblem& problem, ScheduleDirection direction) {
    const Mesh& mesh = problem.mesh;
    validate_field(w_i, mesh, "diagnostics_row: w_i");
    validate_field(w, mesh, "diagnostics_row: w");

    ScalarField diff;
    diff.nodal.resize(mesh.vertex_count());
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
        diff.nodal[v] = w_i.nodal[v] - w.nodal[v];
    std::vector<double> grad_diff = magnitudes(gradient(diff, mesh), mesh);

    // grad(u_i - phi) = -grad(w_i), so the modulars only need |grad w|.
    std::vector<double> grad_wi = magnitudes(gradient(w_i, mesh), mesh);
    std::vector<double> grad_w = magnitudes(gradient(w, mesh), mesh);

    StabilityRow row;
    const ExponentField& d_exp =
        direction == ScheduleDirection::increasing ? p_i : p;
    row.D_grad_modular = modular(grad_diff, d_exp, mesh);
    row.energy_modular_i = weighted_modular(grad_wi, p_i, mesh);
    row.energy_modular_limit = weighted_modular(grad_w, p, mesh);
    row.modular_gap = std::abs(modular(grad_wi, p_i, mesh) - modular(grad_w, p, mesh));
    return row;
}

StabilityReport run_stability(const DirichletProblem& limit_problem,
                              const ExponentSchedule& schedule, const SolverOptions& opts) {
    validate_problem(limit_problem);
    if (schedule.base().samples() != limit_problem.p.samples())
        throw std::invalid_argument(
            "run_stability: schedule base and problem exponent disagree");

    const Mesh& mesh = limit_problem.mesh;
    SolveResult limit = solve_dirichlet(limit_problem, opts);
    ExponentField p_ref = schedule.field(1);

    StabilityReport report;
    report.rows.reserve(static_cast<std::size_t>(schedule.count()));
    for (int i = 1; i <= schedule.count(); ++i) {
        ExponentField p_i = schedule.field(i);
        DirichletProblem problem_i{mesh, p_i, limit_problem.phi, limit_problem.source};
        SolveResult step;
        try {
            step = solve_dirichlet(problem_i, opts);
        } catch (const SolveFailure& e) {
            throw SolveFailure("schedule index " + std::to_string(i) + ": " + e.what(),
                               e.last_w(), e.residual_norm(), e.iterations());
        }

        StabilityRow row = diagnostics_row(step.w, limit.w, p_i, limit_problem.p,
                                           limit_problem, schedule.direction());
        row.i = i;
        row.sup_gap = schedule.offset(i);
        std::vector<double> diff_cells(mesh.cell_count());
        std::vector<double> wi_cells = cell_values(step.w, mesh);
        std::vector<double> w_cells = cell_values(limit.w, mesh);
        for (std::size_t t = 0; t < mesh.cell_count(); ++t)
            diff_cells[t] = wi_cells[t] - w_cells[t];
        row.lux_norm_diff = luxemburg_norm(diff_cells, p_ref, mesh).value;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace pxlap
