#pragma once

#include <string_view>
#include <vector>

#include "pxlap/mesh.hpp"

namespace pxlap {

// Variable exponent sampled at the quadrature nodes (cell barycenters).
// Every sample must be finite and > 1; p_minus and p_plus are the sampled
// extremes, so p_minus > 1 by construction.
class ExponentField {
public:
    explicit ExponentField(std::vector<double> samples);

    const std::vector<double>& samples() const { return samples_; }
    double operator[](std::size_t t) const { return samples_[t]; }
    std::size_t size() const { return samples_.size(); }
    double p_minus() const { return p_minus_; }
    double p_plus() const { return p_plus_; }

private:
    std::vector<double> samples_;
    double p_minus_, p_plus_;
};

ExponentField build_exponent(const Expression& expr, const Mesh& mesh);
ExponentField build_exponent(std::string_view expr_text, const Mesh& mesh);

// Conjugate exponent q = p / (p - 1), samplewise.
ExponentField conjugate(const ExponentField& p);

// Largest |p(a) - p(b)| * |log|a - b|| over distinct quadrature-node pairs:
// a sampled lower bound for the log-Holder modulus constant.  Pairs at unit
// distance (log factor 0) contribute nothing.  Needs at least two nodes.
double log_holder_constant(const ExponentField& p, const Mesh& mesh);

enum class ScheduleDirection { increasing, decreasing };

// Family p_i = base -+ c_i approaching base uniformly from below (increasing)
// or above (decreasing), with harmonic offsets c_i = c1 / i.  Fields in the
// increasing case must stay above 1 with margin 0.05 at every sample.
class ExponentSchedule {
public:
    ExponentSchedule(ExponentField base, ScheduleDirection direction, int count, double c1);

    const ExponentField& base() const { return base_; }
    ScheduleDirection direction() const { return direction_; }
    int count() const { return count_; }
    // i is 1-based; offset(i) = c1 / i.
    double offset(int i) const;
    ExponentField field(int i) const;

private:
    ExponentField base_;
    ScheduleDirection direction_;
    int count_;
    double c1_;
};

ExponentSchedule make_schedule(const ExponentField& base, ScheduleDirection direction,
                               int count, double c1);

}  // namespace pxlap
