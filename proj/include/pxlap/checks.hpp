#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pxlap/modular.hpp"

namespace pxlap {

// Deterministic uniforms: the mt19937_64 output sequence is fixed by the
// standard, and the explicit 53-bit mapping keeps results identical across
// standard libraries (uniform_real_distribution is not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::mt19937_64 engine_;
};

enum class CheckSuite { holder, epsilon, norm_modular, convexity };

// Accepts the CLI spellings: holder | epsilon | norm-modular | convexity.
CheckSuite parse_suite_name(std::string_view name);
std::string suite_name(CheckSuite suite);

struct CheckRow {
    std::string check_name;
    int trial = 0;   // 1-based
    GapReport gap;
};

struct CheckOutcome {
    std::vector<CheckRow> rows;
    bool all_satisfied = true;
};

// Runs `trials` seeded trials of one inequality suite on the given mesh,
// cycling through the exponent families.  The epsilon suite emits a weighted
// and an unweighted row per trial.
CheckOutcome run_check_suite(CheckSuite suite, int trials, std::uint64_t seed,
                             const Mesh& mesh, const std::vector<ExponentField>& families);

// Standard configuration: (0,1) with 64 cells and the exponent families
// {2, 2+x, 1.5+0.4*sin(3x)}.
CheckOutcome run_check_suite(CheckSuite suite, int trials, std::uint64_t seed);

}  // namespace pxlap
