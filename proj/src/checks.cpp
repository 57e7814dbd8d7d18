#include "pxlap/checks.hpp"

#include <cmath>
#include <stdexcept>

namespace pxlap {

CheckSuite parse_suite_name(std::string_view name) {
    if (name == "holder") return CheckSuite::holder;
    if (name == "epsilon") return CheckSuite::epsilon;
    if (name == "norm-modular") return CheckSuite::norm_modular;
    if (name == "convexity") return CheckSuite::convexity;
    throw std::invalid_argument("unknown check suite '" + std::string(name) +
                                "', expected holder | epsilon | norm-modular | convexity");
}

std::string suite_name(CheckSuite suite) {
    switch (suite) {
        case CheckSuite::holder: return "holder";
        case CheckSuite::epsilon: return "epsilon";
        case CheckSuite::norm_modular: return "norm-modular";
        case CheckSuite::convexity: return "convexity";
    }
    return "";
}

namespace {

std::vector<double> random_cells(Rng& rng, std::size_t count) {
    // Magnitude scale spans a few decades so the suites see both
    // modular < 1 and modular > 1 regimes.
    double scale = std::pow(10.0, rng.uniform(-2.0, 1.0));
    std::vector<double> f(count);
    for (double& v : f) v = scale * rng.uniform(-3.0, 3.0);
    return f;
}

void append(CheckOutcome& out, std::string name, int trial, GapReport gap) {
    out.all_satisfied = out.all_satisfied && gap.satisfied;
    out.rows.push_back({std::move(name), trial, gap});
}

}  // namespace

CheckOutcome run_check_suite(CheckSuite suite, int trials, std::uint64_t seed,
                             const Mesh& mesh, const std::vector<ExponentField>& families) {
    if (trials < 1) throw std::invalid_argument("check suite: trials must be at least 1");
    if (families.empty()) throw std::invalid_argument("check suite: no exponent families");

    Rng rng(seed);
    CheckOutcome out;
    std::size_t m = mesh.cell_count();

    for (int trial = 1; trial <= trials; ++trial) {
        const ExponentField& p = families[static_cast<std::size_t>(trial - 1) % families.size()];
        switch (suite) {
            case CheckSuite::holder: {
                std::vector<double> u = random_cells(rng, m);
                std::vector<double> v = random_cells(rng, m);
                append(out, "holder", trial, holder_gap(u, v, p, mesh));
                break;
            }
            case CheckSuite::epsilon: {
                std::vector<double> f = random_cells(rng, m);
                double eps = rng.uniform(0.05, 0.95);
                std::vector<double> q_samples(p.samples());
                for (double& qv : q_samples) qv += eps * rng.uniform();
                ExponentField q(std::move(q_samples));
                append(out, "epsilon_unweighted", trial,
                       epsilon_bound_gap(f, p, q, eps, false, mesh));
                append(out, "epsilon_weighted", trial,
                       epsilon_bound_gap(f, p, q, eps, true, mesh));
                break;
            }
            case CheckSuite::norm_modular: {
                std::vector<double> u = random_cells(rng, m);
                append(out, "norm_modular", trial, norm_modular_gap(u, p, mesh).gap);
                break;
            }
            case CheckSuite::convexity: {
                std::vector<double> u = random_cells(rng, m);
                std::vector<double> v = random_cells(rng, m);
                std::vector<double> mid(m), half_diff(m);
                for (std::size_t t = 0; t < m; ++t) {
                    mid[t] = 0.5 * (u[t] + v[t]);
                    half_diff[t] = 0.5 * (u[t] - v[t]);
                }
                double lhs = weighted_modular(mid, p, mesh);
                double rhs = 0.5 * (weighted_modular(u, p, mesh) +
                                    weighted_modular(v, p, mesh));
                GapReport gap = make_gap(lhs, rhs);
                // Strict inequality whenever the two fields genuinely differ.
                if (weighted_modular(half_diff, p, mesh) > 0.0 && !(lhs < rhs))
                    gap.satisfied = false;
                append(out, "convexity", trial, gap);
                break;
            }
        }
    }
    return out;
}

CheckOutcome run_check_suite(CheckSuite suite, int trials, std::uint64_t seed) {
    Mesh mesh(Interval{0.0, 1.0}, 64);
    std::vector<ExponentField> families;
    families.push_back(build_exponent("2", mesh));
    families.push_back(build_exponent("2+x", mesh));
    families.push_back(build_exponent("1.5+0.4*sin(3*x)", mesh));
    return run_check_suite(suite, trials, seed, mesh, families);
}

}  // namespace pxlap
