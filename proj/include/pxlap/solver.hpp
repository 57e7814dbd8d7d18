#pragma once

#include <stdexcept>
#include <string>

#include "pxlap/exponent.hpp"
#include "pxlap/mesh.hpp"

namespace pxlap {

// Dirichlet problem for div(|grad w|^{p(x)-2} grad w) = f with w = phi on the
// boundary, posed as minimization of
//   E(u) = int p(x)^{-1} |grad(u - phi)|^{p(x)} dx - int f u dx
// over u vanishing on the boundary; the solution is w = phi - u.
struct DirichletProblem {
    Mesh mesh;
    ExponentField p;
    ScalarField phi;
    ScalarField source;
};

void validate_problem(const DirichletProblem& problem);

struct SolverOptions {
    double residual_tol = 1e-8;
    int max_iterations = 200;
    double reg_initial = 1e-2;
    double reg_final = 1e-8;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
};

struct SolveResult {
    ScalarField w;              // phi - u
    ScalarField u;              // homogeneous minimizer, zero on the boundary
    int iterations = 0;
    double final_energy = 0.0;  // unregularized energy of u
    double residual_norm = 0.0; // max weak residual over interior basis functions
    double final_regularization = 0.0;
};

class SolveFailure : public std::runtime_error {
public:
    SolveFailure(const std::string& msg, ScalarField last_w, double residual_norm,
                 int iterations)
        : std::runtime_error(msg), last_w_(std::move(last_w)),
          residual_norm_(residual_norm), iterations_(iterations) {}

    const ScalarField& last_w() const { return last_w_; }
    double residual_norm() const { return residual_norm_; }
    int iterations() const { return iterations_; }

private:
    ScalarField last_w_;
    double residual_norm_;
    int iterations_;
};

// Regularized energy: sum_T m_T p_T^{-1} (|grad(u-phi)|_T^2 + reg^2)^{p_T/2}
// minus the barycentric-quadrature pairing with the source.  reg = 0 gives the
// true functional.  u must vanish on boundary vertices.
double energy(const ScalarField& u, const DirichletProblem& problem, double reg);

// Exact gradient of energy(., problem, reg) as a nodal field, zero at boundary
// vertices.  At reg = 0 the interior components are the (negated) weak-form
// residuals of w = phi - u.
ScalarField energy_gradient(const ScalarField& u, const DirichletProblem& problem, double reg);

// Max over interior basis functions h of
//   | -int |grad w|^{p-2} grad w . grad h dx - int f h dx |
// with the convention 0^{p-2} * 0 = 0.  Requires w = phi on the boundary.
double weak_residual(const ScalarField& w, const DirichletProblem& problem);

// Damped Newton with regularization continuation (reg_initial down to
// reg_final, factor 10), Armijo backtracking, gradient-step fallback.
// `initial` optionally seeds the homogeneous iterate; its boundary entries are
// zeroed.  Throws SolveFailure when max_iterations is exhausted.
SolveResult solve_dirichlet(const DirichletProblem& problem, const SolverOptions& opts = {},
                            const ScalarField* initial = nullptr);

}  // namespace pxlap
