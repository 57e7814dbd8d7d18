#pragma once

#include <vector>

#include "pxlap/exponent.hpp"
#include "pxlap/solver.hpp"

namespace pxlap {

// One schedule index of a stability experiment.  Columns match the CSV:
//   sup_gap            ||p_i - p||_inf (the schedule offset c_i by construction)
//   D_grad_modular     int |grad(w_i - w)|^{p_i} (increasing) or ^p (decreasing)
//   lux_norm_diff      ||w_i - w|| in the Luxemburg norm of the reference
//                      exponent p_1
//   energy_modular_i   int p_i^{-1} |grad(u_i - phi)|^{p_i}
//   energy_modular_limit  the same with the limit solution and exponent
//   modular_gap        | int |grad(u_i - phi)|^{p_i} - int |grad(u - phi)|^p |
struct StabilityRow {
    int i = 0;
    double sup_gap = 0.0;
    double D_grad_modular = 0.0;
    double lux_norm_diff = 0.0;
    double energy_modular_i = 0.0;
    double energy_modular_limit = 0.0;
    double modular_gap = 0.0;
};

struct StabilityReport {
    std::vector<StabilityRow> rows;
};

// Modular diagnostics comparing a scheduled solution against the limit one.
// Fills every column except i, sup_gap and lux_norm_diff, which depend on the
// schedule rather than the two solutions.
StabilityRow diagnostics_row(const ScalarField& w_i, const ScalarField& w,
                             const ExponentField& p_i, const ExponentField& p,
                             const DirichletProblem& problem, ScheduleDirection direction);

// Solves the limit problem (exponent = schedule base) and every scheduled
// problem, and tabulates one row per index.  Solver failures are rethrown with
// the failing schedule index named.
StabilityReport run_stability(const DirichletProblem& limit_problem,
                              const ExponentSchedule& schedule, const SolverOptions& opts);

}  // namespace pxlap
