#pragma once

#include <span>

#include "pxlap/exponent.hpp"
#include "pxlap/mesh.hpp"

namespace pxlap {

struct NormResult {
    double value = 0.0;
    double modular_at_value = 0.0;   // modular of f/value when value > 0
    int bisection_iterations = 0;
};

struct GapReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

// satisfied = lhs <= rhs + 1e-12 * max(1, |rhs|)
GapReport make_gap(double lhs, double rhs);

// Integral modular: sum over cells of |f_T|^{p_T} * measure_T.
double modular(std::span<const double> f_cells, const ExponentField& p, const Mesh& mesh);

// Weighted modular: sum of p_T^{-1} |f_T|^{p_T} * measure_T.
double weighted_modular(std::span<const double> f_cells, const ExponentField& p,
                        const Mesh& mesh);

// Luxemburg norm: inf over lambda > 0 with modular(f/lambda) <= 1, by
// bisection on the strictly decreasing modular map.  0 for f identically 0.
NormResult luxemburg_norm(std::span<const double> f_cells, const ExponentField& p,
                          const Mesh& mesh);

// ||u||_p + || |grad u| ||_p with barycentric cell values of u.
double sobolev_norm(const ScalarField& u, const ExponentField& p, const Mesh& mesh);

// lhs = integral of |u v|; rhs = 2 ||u||_p ||v||_q, q the conjugate exponent.
GapReport holder_gap(std::span<const double> u_cells, std::span<const double> v_cells,
                     const ExponentField& p, const Mesh& mesh);

// Requires p <= q <= p + eps samplewise and 0 < eps < 1.
// unweighted: lhs = int |f|^p,        rhs = eps|O| + eps^-eps int |f|^q
// weighted:   lhs = int p^-1 |f|^p,   rhs = eps|O| + eps^-eps (1+eps) int q^-1 |f|^q
GapReport epsilon_bound_gap(std::span<const double> f_cells, const ExponentField& p,
                            const ExponentField& q, double eps, bool weighted,
                            const Mesh& mesh);

struct NormModularReport {
    GapReport gap;
    // True when the modular is <= 1, where the 1/p_plus exponent already bounds the norm.
    bool modular_le_one = false;
};

// lhs = ||u||_p; rhs = max(rho^{1/p_plus}, rho^{1/p_minus}) with rho the modular.
NormModularReport norm_modular_gap(std::span<const double> u_cells, const ExponentField& p,
                                   const Mesh& mesh);

// eps * measure + eps^-eps, for 0 < eps < 1 and measure > 0.
double embedding_constant(double eps, double measure);

}  // namespace pxlap
