#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "pxlap/expression.hpp"

namespace pxlap {

struct Interval {
    double a, b;
};

struct Rectangle {
    double ax, ay, bx, by;
};

using Domain = std::variant<Interval, Rectangle>;

struct Point {
    double x, y;
};

// Conforming P1 mesh: n equal cells on an interval, or an n-by-n grid of
// squares each split into two triangles on a rectangle.  Quadrature is the
// one-point barycentric rule (weight = cell measure), so cellwise quantities
// live at barycenters.  All geometry is precomputed; a Mesh never changes.
class Mesh {
public:
    Mesh(const Domain& domain, int n);

    int dimension() const { return dim_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t cell_count() const { return cell_measures_.size(); }

    const std::vector<Point>& vertices() const { return vertices_; }
    std::span<const int> cell(std::size_t t) const {
        return {cells_.data() + t * (dim_ + 1), static_cast<std::size_t>(dim_ + 1)};
    }
    bool is_boundary(std::size_t v) const { return boundary_[v]; }
    const std::vector<std::size_t>& interior_vertices() const { return interior_; }
    // Interior dof index of vertex v, or -1 on the boundary.
    int interior_index(std::size_t v) const { return interior_index_[v]; }

    double cell_measure(std::size_t t) const { return cell_measures_[t]; }
    Point cell_barycenter(std::size_t t) const { return barycenters_[t]; }
    double domain_measure() const { return domain_measure_; }

    // Gradient of the local P1 basis function of vertex k (0..dim) on cell t.
    std::span<const double> basis_gradient(std::size_t t, int k) const {
        return {basis_grads_.data() + (t * (dim_ + 1) + k) * dim_,
                static_cast<std::size_t>(dim_)};
    }

private:
    int dim_;
    std::vector<Point> vertices_;
    std::vector<int> cells_;            // (dim+1) vertex ids per cell
    std::vector<bool> boundary_;
    std::vector<std::size_t> interior_;
    std::vector<int> interior_index_;
    std::vector<double> cell_measures_;
    std::vector<Point> barycenters_;
    std::vector<double> basis_grads_;   // cell-major, then local vertex, then component
    double domain_measure_;
};

Mesh build_mesh(const Domain& domain, int n);

// Nodal P1 field; one value per mesh vertex.
struct ScalarField {
    std::vector<double> nodal;
};

// Cellwise-constant vector field; dim components per cell, cell-major.
struct CellVectorField {
    int dim = 1;
    std::vector<double> comps;
};

void validate_field(const ScalarField& u, const Mesh& mesh, const char* what);

ScalarField interpolate(const Expression& e, const Mesh& mesh);

// P1 value at each barycenter: the mean of the cell's vertex values.
std::vector<double> cell_values(const ScalarField& u, const Mesh& mesh);

std::vector<double> eval_at_barycenters(const Expression& e, const Mesh& mesh);

CellVectorField gradient(const ScalarField& u, const Mesh& mesh);

std::vector<double> magnitudes(const CellVectorField& g, const Mesh& mesh);

// One-point barycentric quadrature of a cellwise-constant integrand.
double integrate(std::span<const double> cell_vals, const Mesh& mesh);

}  // namespace pxlap
