#include "pxlap/modular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pxlap {

namespace {

void check_alignment(std::span<const double> f, const ExponentField& p, const Mesh& mesh,
                     const char* what) {
    if (f.size() != mesh.cell_count() || p.size() != mesh.cell_count())
        throw std::invalid_argument(std::string(what) + ": values/exponent/mesh misaligned");
}

// Bisection runs until the bracket is this narrow relative to its endpoint.
// Tighter than strictly needed so that exact-equality gap checks stay inside
// the GapReport tolerance.
constexpr double kLuxRelTol = 1e-14;

}  // namespace

GapReport make_gap(double lhs, double rhs) {
    return {lhs, rhs, lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs))};
}

double modular(std::span<const double> f_cells, const ExponentField& p, const Mesh& mesh) {
    check_alignment(f_cells, p, mesh, "modular");
    double s = 0.0;
    for (std::size_t t = 0; t < f_cells.size(); ++t)
        s += mesh.cell_measure(t) * std::pow(std::abs(f_cells[t]), p[t]);
    return s;
}

double weighted_modular(std::span<const double> f_cells, const ExponentField& p,
                        const Mesh& mesh) {
    check_alignment(f_cells, p, mesh, "weighted_modular");
    double s = 0.0;
    for (std::size_t t = 0; t < f_cells.size(); ++t)
        s += mesh.cell_measure(t) * std::pow(std::abs(f_cells[t]), p[t]) / p[t];
    return s;
}

NormResult luxemburg_norm(std::span<const double> f_cells, const ExponentField& p,
                          const Mesh& mesh) {
    check_alignment(f_cells, p, mesh, "luxemburg_norm");

    double fmax = 0.0;
    for (double v : f_cells) fmax = std::max(fmax, std::abs(v));
    if (fmax == 0.0) return {0.0, 0.0, 0};

    auto mod_at = [&](double lam) {
        double s = 0.0;
        for (std::size_t t = 0; t < f_cells.size(); ++t)
            s += mesh.cell_measure(t) * std::pow(std::abs(f_cells[t]) / lam, p[t]);
        return s;
    };

    int iters = 0;
    double hi = fmax * std::pow(mesh.domain_measure(), 1.0 / p.p_plus());
    while (mod_at(hi) > 1.0) {
        hi *= 2.0;
        ++iters;
    }
    double lo = hi;
    while (mod_at(lo) <= 1.0) {
        lo *= 0.5;
        ++iters;
    }

    while (hi - lo > kLuxRelTol * hi) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (mod_at(mid) <= 1.0) hi = mid; else lo = mid;
        ++iters;
    }
    return {hi, mod_at(hi), iters};
}

double sobolev_norm(const ScalarField& u, const ExponentField& p, const Mesh& mesh) {
    validate_field(u, mesh, "sobolev_norm");
    std::vector<double> uc = cell_values(u, mesh);
    std::vector<double> gm = magnitudes(gradient(u, mesh), mesh);
    return luxemburg_norm(uc, p, mesh).value + luxemburg_norm(gm, p, mesh).value;
}

GapReport holder_gap(std::span<const double> u_cells, std::span<const double> v_cells,
                     const ExponentField& p, const Mesh& mesh) {
    check_alignment(u_cells, p, mesh, "holder_gap");
    if (v_cells.size() != mesh.cell_count())
        throw std::invalid_argument("holder_gap: v misaligned");
    double lhs = 0.0;
    for (std::size_t t = 0; t < u_cells.size(); ++t)
        lhs += mesh.cell_measure(t) * std::abs(u_cells[t] * v_cells[t]);
    ExponentField q = conjugate(p);
    double rhs = 2.0 * luxemburg_norm(u_cells, p, mesh).value *
                 luxemburg_norm(v_cells, q, mesh).value;
    return make_gap(lhs, rhs);
}

GapReport epsilon_bound_gap(std::span<const double> f_cells, const ExponentField& p,
                            const ExponentField& q, double eps, bool weighted,
                            const Mesh& mesh) {
    check_alignment(f_cells, p, mesh, "epsilon_bound_gap");
    if (q.size() != p.size())
        throw std::invalid_argument("epsilon_bound_gap: q misaligned");
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::invalid_argument("epsilon_bound_gap: eps must lie in (0,1), got " +
                                    std::to_string(eps));
    for (std::size_t t = 0; t < p.size(); ++t)
        if (q[t] < p[t] || q[t] > p[t] + eps)
            throw std::invalid_argument(
                "epsilon_bound_gap: exponent ordering violated at sample " +
                std::to_string(t) + ": need p <= q <= p + eps");

    double pow_eps = std::pow(eps, -eps);
    double lhs, rhs;
    if (weighted) {
        lhs = weighted_modular(f_cells, p, mesh);
        rhs = eps * mesh.domain_measure() +
              pow_eps * (1.0 + eps) * weighted_modular(f_cells, q, mesh);
    } else {
        lhs = modular(f_cells, p, mesh);
        rhs = eps * mesh.domain_measure() + pow_eps * modular(f_cells, q, mesh);
    }
    return make_gap(lhs, rhs);
}

NormModularReport norm_modular_gap(std::span<const double> u_cells, const ExponentField& p,
                                   const Mesh& mesh) {
    double rho = modular(u_cells, p, mesh);
    double lhs = luxemburg_norm(u_cells, p, mesh).value;
    double rhs = std::max(std::pow(rho, 1.0 / p.p_plus()), std::pow(rho, 1.0 / p.p_minus()));
    return {make_gap(lhs, rhs), rho <= 1.0};
}

double embedding_constant(double eps, double measure) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::invalid_argument("embedding_constant: eps must lie in (0,1)");
    if (!(measure > 0.0))
        throw std::invalid_argument("embedding_constant: measure must be positive");
    return eps * measure + std::pow(eps, -eps);
}

}  // namespace pxlap
