#include "pxlap/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pxlap {

namespace {

constexpr double kFloorMargin = 0.05;

}  // namespace

ExponentField::ExponentField(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty())
        throw std::invalid_argument("exponent field: no samples");
    p_minus_ = samples_[0];
    p_plus_ = samples_[0];
    for (std::size_t t = 0; t < samples_.size(); ++t) {
        double v = samples_[t];
        if (!std::isfinite(v) || v <= 1.0)
            throw std::invalid_argument("exponent field: sample " + std::to_string(t) +
                                        " is " + std::to_string(v) +
                                        ", every exponent must be finite and > 1");
        p_minus_ = std::min(p_minus_, v);
        p_plus_ = std::max(p_plus_, v);
    }
}

ExponentField build_exponent(const Expression& expr, const Mesh& mesh) {
    return ExponentField(eval_at_barycenters(expr, mesh));
}

ExponentField build_exponent(std::string_view expr_text, const Mesh& mesh) {
    return build_exponent(Expression::parse(expr_text), mesh);
}

ExponentField conjugate(const ExponentField& p) {
    std::vector<double> q(p.size());
    for (std::size_t t = 0; t < p.size(); ++t) q[t] = p[t] / (p[t] - 1.0);
    return ExponentField(std::move(q));
}

double log_holder_constant(const ExponentField& p, const Mesh& mesh) {
    std::size_t m = mesh.cell_count();
    if (p.size() != m)
        throw std::invalid_argument("log_holder_constant: exponent/mesh mismatch");
    if (m < 2)
        throw std::invalid_argument("log_holder_constant: need at least two quadrature nodes");
    double best = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
        Point a = mesh.cell_barycenter(s);
        for (std::size_t t = s + 1; t < m; ++t) {
            Point b = mesh.cell_barycenter(t);
            double dx = a.x - b.x, dy = a.y - b.y;
            double dist = std::sqrt(dx * dx + dy * dy);
            best = std::max(best, std::abs(p[s] - p[t]) * std::abs(std::log(dist)));
        }
    }
    return best;
}

ExponentSchedule::ExponentSchedule(ExponentField base, ScheduleDirection direction,
                                   int count, double c1)
    : base_(std::move(base)), direction_(direction), count_(count), c1_(c1) {
    if (count_ < 1)
        throw std::invalid_argument("schedule: count must be at least 1, got " +
                                    std::to_string(count_));
    if (!(c1_ > 0.0) || !std::isfinite(c1_))
        throw std::invalid_argument("schedule: c1 must be positive and finite");
    if (direction_ == ScheduleDirection::increasing) {
        double lowest = base_.p_minus() - c1_;
        if (lowest < 1.0 + kFloorMargin)
            throw std::invalid_argument(
                "schedule: increasing family dips to " + std::to_string(lowest) +
                ", below the floor " + std::to_string(1.0 + kFloorMargin));
    }
}

double ExponentSchedule::offset(int i) const {
    if (i < 1 || i > count_)
        throw std::out_of_range("schedule: index " + std::to_string(i) +
                                " outside 1.." + std::to_string(count_));
    return c1_ / static_cast<double>(i);
}

ExponentField ExponentSchedule::field(int i) const {
    double c = offset(i);
    if (direction_ == ScheduleDirection::decreasing) c = -c;
    std::vector<double> s(base_.samples());
    for (double& v : s) v -= c;
    return ExponentField(std::move(s));
}

ExponentSchedule make_schedule(const ExponentField& base, ScheduleDirection direction,
                               int count, double c1) {
    return ExponentSchedule(base, direction, count, c1);
}

}  // namespace pxlap
