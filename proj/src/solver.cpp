#include "pxlap/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <vector>

namespace pxlap {

namespace {

void require_zero_boundary(const ScalarField& u, const Mesh& mesh, const char* what) {
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
        if (mesh.is_boundary(v) && u.nodal[v] != 0.0)
            throw std::invalid_argument(std::string(what) +
                                        ": iterate must vanish on boundary vertices");
}

// Cellwise gradient of u - phi, written into g (dim components).
void diff_gradient(const ScalarField& u, const ScalarField& phi, const Mesh& mesh,
                   std::size_t t, double* g) {
    int dim = mesh.dimension();
    auto c = mesh.cell(t);
    for (int d = 0; d < dim; ++d) g[d] = 0.0;
    for (int k = 0; k <= dim; ++k) {
        double val = u.nodal[static_cast<std::size_t>(c[k])] -
                     phi.nodal[static_cast<std::size_t>(c[k])];
        auto bg = mesh.basis_gradient(t, k);
        for (int d = 0; d < dim; ++d) g[d] += val * bg[static_cast<std::size_t>(d)];
    }
}

std::vector<double> source_cell_values(const DirichletProblem& problem) {
    return cell_values(problem.source, problem.mesh);
}

}  // namespace

void validate_problem(const DirichletProblem& problem) {
    if (problem.p.size() != problem.mesh.cell_count())
        throw std::invalid_argument("problem: exponent field not aligned with mesh cells");
    validate_field(problem.phi, problem.mesh, "problem: phi");
    validate_field(problem.source, problem.mesh, "problem: source");
}

double energy(const ScalarField& u, const DirichletProblem& problem, double reg) {
    const Mesh& mesh = problem.mesh;
    validate_field(u, mesh, "energy");
    require_zero_boundary(u, mesh, "energy");

    int dim = mesh.dimension();
    std::vector<double> fbar = source_cell_values(problem);
    std::vector<double> ubar = cell_values(u, mesh);
    double g[2];
    double E = 0.0;
    for (std::size_t t = 0; t < mesh.cell_count(); ++t) {
        diff_gradient(u, problem.phi, mesh, t, g);
        double s = reg * reg;
        for (int d = 0; d < dim; ++d) s += g[d] * g[d];
        double p = problem.p[t];
        E += mesh.cell_measure(t) * (std::pow(s, 0.5 * p) / p - fbar[t] * ubar[t]);
    }
    return E;
}

ScalarField energy_gradient(const ScalarField& u, const DirichletProblem& problem, double reg) {
    const Mesh& mesh = problem.mesh;
    validate_field(u, mesh, "energy_gradient");
    require_zero_boundary(u, mesh, "energy_gradient");

    int dim = mesh.dimension();
    std::vector<double> fbar = source_cell_values(problem);
    ScalarField r;
    r.nodal.assign(mesh.vertex_count(), 0.0);
    double g[2];
    for (std::size_t t = 0; t < mesh.cell_count(); ++t) {
        diff_gradient(u, problem.phi, mesh, t, g);
        double s = reg * reg;
        for (int d = 0; d < dim; ++d) s += g[d] * g[d];
        double p = problem.p[t];
        double coef = s == 0.0 ? 0.0 : std::pow(s, 0.5 * (p - 2.0));
        double m = mesh.cell_measure(t);
        auto c = mesh.cell(t);
        for (int k = 0; k <= dim; ++k) {
            std::size_t v = static_cast<std::size_t>(c[k]);
            if (mesh.is_boundary(v)) continue;
            auto bg = mesh.basis_gradient(t, k);
            double flux = 0.0;
            for (int d = 0; d < dim; ++d) flux += g[d] * bg[static_cast<std::size_t>(d)];
            r.nodal[v] += m * (coef * flux - fbar[t] / (dim + 1));
        }
    }
    return r;
}

double weak_residual(const ScalarField& w, const DirichletProblem& problem) {
    const Mesh& mesh = problem.mesh;
    validate_field(w, mesh, "weak_residual");
    ScalarField u;
    u.nodal.resize(mesh.vertex_count());
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
        u.nodal[v] = problem.phi.nodal[v] - w.nodal[v];
    require_zero_boundary(u, mesh, "weak_residual (w must equal phi on the boundary)");
    ScalarField r = energy_gradient(u, problem, 0.0);
    double m = 0.0;
    for (double v : r.nodal) m = std::max(m, std::abs(v));
    return m;
}

namespace {

class NewtonSolver {
public:
    NewtonSolver(const DirichletProblem& problem, const SolverOptions& opts)
        : problem_(problem), mesh_(problem.mesh), opts_(opts),
          ndof_(mesh_.interior_vertices().size()) {
        u_.nodal.assign(mesh_.vertex_count(), 0.0);
    }

    void seed(const ScalarField& initial) {
        validate_field(initial, mesh_, "solve_dirichlet: initial iterate");
        u_ = initial;
        for (std::size_t v = 0; v < mesh_.vertex_count(); ++v)
            if (mesh_.is_boundary(v)) u_.nodal[v] = 0.0;
    }

    SolveResult run() {
        double reg = opts_.reg_initial;
        for (;;) {
            converge_stage(reg, opts_.residual_tol);
            if (reg <= opts_.reg_final) break;
            reg = std::max(reg / 10.0, opts_.reg_final);
        }

        // The stage criterion controls the regularized gradient; make sure the
        // unregularized weak form is within tolerance too.
        double stage_tol = opts_.residual_tol;
        double wr = weak_residual(current_w(), problem_);
        while (wr > opts_.residual_tol && stage_tol > 1e-15) {
            stage_tol *= 0.1;
            converge_stage(reg, stage_tol);
            wr = weak_residual(current_w(), problem_);
        }
        if (wr > opts_.residual_tol)
            throw SolveFailure("solver stalled above tolerance: weak residual " +
                               std::to_string(wr), current_w(), wr, iterations_);

        SolveResult out;
        out.w = current_w();
        out.u = u_;
        out.iterations = iterations_;
        out.final_energy = energy(u_, problem_, 0.0);
        out.residual_norm = wr;
        out.final_regularization = reg;
        return out;
    }

private:
    ScalarField current_w() const {
        ScalarField w;
        w.nodal.resize(mesh_.vertex_count());
        for (std::size_t v = 0; v < mesh_.vertex_count(); ++v)
            w.nodal[v] = problem_.phi.nodal[v] - u_.nodal[v];
        return w;
    }

    [[noreturn]] void fail(const std::string& msg, double residual) {
        throw SolveFailure(msg, current_w(), residual, iterations_);
    }

    void converge_stage(double reg, double tol) {
        for (;;) {
            ScalarField grad = energy_gradient(u_, problem_, reg);
            double gnorm = 0.0;
            for (double v : grad.nodal) gnorm = std::max(gnorm, std::abs(v));
            if (gnorm <= tol) return;
            if (iterations_ >= opts_.max_iterations)
                fail("no convergence after " + std::to_string(iterations_) +
                         " iterations (residual " + std::to_string(gnorm) + ")",
                     gnorm);
            newton_step(grad, reg);
            ++iterations_;
        }
    }

    Eigen::VectorXd solve_newton_system(double reg, const Eigen::VectorXd& rhs) {
        using Trip = Eigen::Triplet<double>;
        std::vector<Trip> trips;
        int dim = mesh_.dimension();
        trips.reserve(mesh_.cell_count() * static_cast<std::size_t>((dim + 1) * (dim + 1)));
        double g[2];
        for (std::size_t t = 0; t < mesh_.cell_count(); ++t) {
            diff_gradient(u_, problem_.phi, mesh_, t, g);
            double s = reg * reg;
            for (int d = 0; d < dim; ++d) s += g[d] * g[d];
            double p = problem_.p[t];
            double a = std::pow(s, 0.5 * (p - 2.0));
            double b = (p - 2.0) * std::pow(s, 0.5 * (p - 4.0));
            double m = mesh_.cell_measure(t);
            auto c = mesh_.cell(t);
            for (int j = 0; j <= dim; ++j) {
                int dj = mesh_.interior_index(static_cast<std::size_t>(c[j]));
                if (dj < 0) continue;
                auto bgj = mesh_.basis_gradient(t, j);
                double gdj = 0.0;
                for (int d = 0; d < dim; ++d) gdj += g[d] * bgj[static_cast<std::size_t>(d)];
                for (int k = 0; k <= dim; ++k) {
                    int dk = mesh_.interior_index(static_cast<std::size_t>(c[k]));
                    if (dk < 0) continue;
                    auto bgk = mesh_.basis_gradient(t, k);
                    double dot = 0.0, gdk = 0.0;
                    for (int d = 0; d < dim; ++d) {
                        dot += bgj[static_cast<std::size_t>(d)] * bgk[static_cast<std::size_t>(d)];
                        gdk += g[d] * bgk[static_cast<std::size_t>(d)];
                    }
                    trips.emplace_back(dj, dk, m * (a * dot + b * gdj * gdk));
                }
            }
        }
        Eigen::SparseMatrix<double> H(static_cast<Eigen::Index>(ndof_),
                                      static_cast<Eigen::Index>(ndof_));
        H.setFromTriplets(trips.begin(), trips.end());

        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(H);
        if (ldlt.info() != Eigen::Success)
            fail("Newton system factorization failed", rhs.lpNorm<Eigen::Infinity>());
        Eigen::VectorXd d = ldlt.solve(rhs);

        double rhs_norm = rhs.lpNorm<Eigen::Infinity>();
        if (rhs_norm > 0.0) {
            double rel = (H * d - rhs).lpNorm<Eigen::Infinity>() / rhs_norm;
            if (rel > 1e-10) {
                d += ldlt.solve(rhs - H * d);
                rel = (H * d - rhs).lpNorm<Eigen::Infinity>() / rhs_norm;
                if (rel > 1e-10)
                    fail("Newton system solve above relative residual 1e-10", rhs_norm);
            }
        }
        return d;
    }

    void newton_step(const ScalarField& grad, double reg) {
        const auto& interior = mesh_.interior_vertices();
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(ndof_));
        for (std::size_t i = 0; i < ndof_; ++i)
            rhs[static_cast<Eigen::Index>(i)] = -grad.nodal[interior[i]];

        Eigen::VectorXd d = solve_newton_system(reg, rhs);

        double E0 = energy(u_, problem_, reg);
        if (!try_step(d, grad, E0, reg)) {
            // Newton direction exhausted the backtracking budget; rhs is the
            // negated gradient, always a descent direction.
            if (!try_step(rhs, grad, E0, reg))
                fail("line search failed in both Newton and gradient directions", 0.0);
        }
    }

    bool try_step(const Eigen::VectorXd& d, const ScalarField& grad, double E0, double reg) {
        const auto& interior = mesh_.interior_vertices();
        double gd = 0.0;
        for (std::size_t i = 0; i < ndof_; ++i)
            gd += grad.nodal[interior[i]] * d[static_cast<Eigen::Index>(i)];

        // Near roundoff-level stationarity the Armijo predicate is noise.
        bool noise_floor = std::abs(gd) <= 1e-14 * (1.0 + std::abs(E0));

        ScalarField trial = u_;
        double t = 1.0;
        while (t >= 1e-14) {
            for (std::size_t i = 0; i < ndof_; ++i)
                trial.nodal[interior[i]] =
                    u_.nodal[interior[i]] + t * d[static_cast<Eigen::Index>(i)];
            double Et = energy(trial, problem_, reg);
            if (noise_floor || Et <= E0 + opts_.armijo_c * t * gd) {
                if (Et > E0 + 1e-13 * (1.0 + std::abs(E0)))
                    throw std::logic_error("energy increased across an accepted step");
                u_ = trial;
                return true;
            }
            t *= opts_.backtrack_factor;
        }
        return false;
    }

    const DirichletProblem& problem_;
    const Mesh& mesh_;
    SolverOptions opts_;
    std::size_t ndof_;
    ScalarField u_;
    int iterations_ = 0;
};

void validate_options(const SolverOptions& o) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("solver options: ") + name +
                                        " must be positive and finite");
    };
    positive(o.residual_tol, "residual_tol");
    positive(o.reg_initial, "reg_initial");
    positive(o.reg_final, "reg_final");
    positive(o.armijo_c, "armijo_c");
    positive(o.backtrack_factor, "backtrack_factor");
    if (o.max_iterations < 1)
        throw std::invalid_argument("solver options: max_iterations must be at least 1");
    if (o.reg_final > o.reg_initial)
        throw std::invalid_argument("solver options: reg_final must not exceed reg_initial");
    if (o.backtrack_factor >= 1.0)
        throw std::invalid_argument("solver options: backtrack_factor must be below 1");
}

}  // namespace

SolveResult solve_dirichlet(const DirichletProblem& problem, const SolverOptions& opts,
                            const ScalarField* initial) {
    validate_problem(problem);
    validate_options(opts);
    NewtonSolver solver(problem, opts);
    if (initial) solver.seed(*initial);
    return solver.run();
}

}  // namespace pxlap
