#include "pxlap/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pxlap {

Mesh::Mesh(const Domain& domain, int n) {
    if (n < 1) throw std::invalid_argument("mesh: n must be at least 1, got " + std::to_string(n));

    if (const auto* iv = std::get_if<Interval>(&domain)) {
        if (!(iv->b > iv->a))
            throw std::invalid_argument("mesh: degenerate interval, need a < b");
        dim_ = 1;
        std::size_t nv = static_cast<std::size_t>(n) + 1;
        double h = (iv->b - iv->a) / n;
        vertices_.resize(nv);
        for (std::size_t i = 0; i < nv; ++i)
            vertices_[i] = {iv->a + h * static_cast<double>(i), 0.0};
        boundary_.assign(nv, false);
        boundary_.front() = boundary_.back() = true;

        cells_.reserve(2 * static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) {
            cells_.push_back(t);
            cells_.push_back(t + 1);
        }
        cell_measures_.assign(static_cast<std::size_t>(n), h);
        barycenters_.resize(static_cast<std::size_t>(n));
        basis_grads_.resize(2 * static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) {
            double xa = vertices_[static_cast<std::size_t>(t)].x;
            double xb = vertices_[static_cast<std::size_t>(t) + 1].x;
            barycenters_[static_cast<std::size_t>(t)] = {0.5 * (xa + xb), 0.0};
            basis_grads_[2 * static_cast<std::size_t>(t)] = -1.0 / h;
            basis_grads_[2 * static_cast<std::size_t>(t) + 1] = 1.0 / h;
        }
    } else {
        const auto& r = std::get<Rectangle>(domain);
        if (!(r.bx > r.ax) || !(r.by > r.ay))
            throw std::invalid_argument("mesh: degenerate rectangle, need ax < bx and ay < by");
        dim_ = 2;
        std::size_t side = static_cast<std::size_t>(n) + 1;
        double hx = (r.bx - r.ax) / n;
        double hy = (r.by - r.ay) / n;
        vertices_.resize(side * side);
        boundary_.assign(side * side, false);
        auto vid = [side](std::size_t i, std::size_t j) { return j * side + i; };
        for (std::size_t j = 0; j < side; ++j)
            for (std::size_t i = 0; i < side; ++i) {
                vertices_[vid(i, j)] = {r.ax + hx * static_cast<double>(i),
                                        r.ay + hy * static_cast<double>(j)};
                if (i == 0 || j == 0 || i + 1 == side || j + 1 == side)
                    boundary_[vid(i, j)] = true;
            }

        // Each grid square splits along its main diagonal into two triangles.
        std::size_t nt = 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
        cells_.reserve(3 * nt);
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
                int v00 = static_cast<int>(vid(i, j));
                int v10 = static_cast<int>(vid(i + 1, j));
                int v11 = static_cast<int>(vid(i + 1, j + 1));
                int v01 = static_cast<int>(vid(i, j + 1));
                cells_.push_back(v00); cells_.push_back(v10); cells_.push_back(v11);
                cells_.push_back(v00); cells_.push_back(v11); cells_.push_back(v01);
            }

        cell_measures_.assign(nt, 0.5 * hx * hy);
        barycenters_.resize(nt);
        basis_grads_.resize(3 * nt * 2);
        for (std::size_t t = 0; t < nt; ++t) {
            const int* c = cells_.data() + 3 * t;
            Point p0 = vertices_[static_cast<std::size_t>(c[0])];
            Point p1 = vertices_[static_cast<std::size_t>(c[1])];
            Point p2 = vertices_[static_cast<std::size_t>(c[2])];
            barycenters_[t] = {(p0.x + p1.x + p2.x) / 3.0, (p0.y + p1.y + p2.y) / 3.0};
            double det = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
            // grad of basis k is the inward-scaled normal of the opposite edge
            double* g = basis_grads_.data() + 6 * t;
            g[0] = (p1.y - p2.y) / det; g[1] = (p2.x - p1.x) / det;
            g[2] = (p2.y - p0.y) / det; g[3] = (p0.x - p2.x) / det;
            g[4] = (p0.y - p1.y) / det; g[5] = (p1.x - p0.x) / det;
        }
    }

    interior_index_.assign(vertex_count(), -1);
    for (std::size_t v = 0; v < vertex_count(); ++v)
        if (!boundary_[v]) {
            interior_index_[v] = static_cast<int>(interior_.size());
            interior_.push_back(v);
        }

    domain_measure_ = 0.0;
    for (double m : cell_measures_) domain_measure_ += m;
}

Mesh build_mesh(const Domain& domain, int n) { return Mesh(domain, n); }

void validate_field(const ScalarField& u, const Mesh& mesh, const char* what) {
    if (u.nodal.size() != mesh.vertex_count())
        throw std::invalid_argument(std::string(what) + ": field has " +
                                    std::to_string(u.nodal.size()) + " values, mesh has " +
                                    std::to_string(mesh.vertex_count()) + " vertices");
    for (double v : u.nodal)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite nodal value");
}

ScalarField interpolate(const Expression& e, const Mesh& mesh) {
    ScalarField u;
    u.nodal.reserve(mesh.vertex_count());
    for (const Point& p : mesh.vertices()) u.nodal.push_back(e(p.x, p.y));
    validate_field(u, mesh, ("interpolate '" + e.text() + "'").c_str());
    return u;
}

std::vector<double> cell_values(const ScalarField& u, const Mesh& mesh) {
    std::vector<double> out(mesh.cell_count());
    int nv = mesh.dimension() + 1;
    for (std::size_t t = 0; t < mesh.cell_count(); ++t) {
        auto c = mesh.cell(t);
        double s = 0.0;
        for (int k = 0; k < nv; ++k) s += u.nodal[static_cast<std::size_t>(c[k])];
        out[t] = s / nv;
    }
    return out;
}

std::vector<double> eval_at_barycenters(const Expression& e, const Mesh& mesh) {
    std::vector<double> out(mesh.cell_count());
    for (std::size_t t = 0; t < mesh.cell_count(); ++t) {
        Point p = mesh.cell_barycenter(t);
        out[t] = e(p.x, p.y);
        if (!std::isfinite(out[t]))
            throw std::invalid_argument("expression '" + e.text() +
                                        "' is non-finite at a quadrature node");
    }
    return out;
}

CellVectorField gradient(const ScalarField& u, const Mesh& mesh) {
    validate_field(u, mesh, "gradient");
    int dim = mesh.dimension();
    CellVectorField g;
    g.dim = dim;
    g.comps.assign(mesh.cell_count() * static_cast<std::size_t>(dim), 0.0);
    for (std::size_t t = 0; t < mesh.cell_count(); ++t) {
        auto c = mesh.cell(t);
        double* gt = g.comps.data() + t * static_cast<std::size_t>(dim);
        for (int k = 0; k <= dim; ++k) {
            double uk = u.nodal[static_cast<std::size_t>(c[k])];
            auto bg = mesh.basis_gradient(t, k);
            for (int d = 0; d < dim; ++d) gt[d] += uk * bg[static_cast<std::size_t>(d)];
        }
    }
    return g;
}

std::vector<double> magnitudes(const CellVectorField& g, const Mesh& mesh) {
    if (g.dim != mesh.dimension() ||
        g.comps.size() != mesh.cell_count() * static_cast<std::size_t>(g.dim))
        throw std::invalid_argument("magnitudes: field/mesh shape mismatch");
    std::vector<double> out(mesh.cell_count());
    for (std::size_t t = 0; t < mesh.cell_count(); ++t) {
        double s = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            double c = g.comps[t * static_cast<std::size_t>(g.dim) + static_cast<std::size_t>(d)];
            s += c * c;
        }
        out[t] = std::sqrt(s);
    }
    return out;
}

double integrate(std::span<const double> cell_vals, const Mesh& mesh) {
    if (cell_vals.size() != mesh.cell_count())
        throw std::invalid_argument("integrate: expected one value per cell");
    double s = 0.0;
    for (std::size_t t = 0; t < cell_vals.size(); ++t)
        s += mesh.cell_measure(t) * cell_vals[t];
    return s;
}

}  // namespace pxlap
