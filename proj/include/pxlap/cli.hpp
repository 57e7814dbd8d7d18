#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "pxlap/checks.hpp"
#include "pxlap/solver.hpp"
#include "pxlap/stability.hpp"

namespace pxlap {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg), line_(0) {}

    int line() const { return line_; }

private:
    int line_;
};

// Flat key = value configuration; see parse_config for the vocabulary.
struct RunConfig {
    std::optional<Domain> domain;
    std::optional<int> n;
    std::optional<std::string> p_expr;
    std::optional<std::string> phi_expr;
    std::optional<std::string> f_expr;
    SolverOptions solver;
    std::optional<ScheduleDirection> direction;
    std::optional<int> count;
    std::optional<double> c1;

    // Filled from command-line flags rather than the config file.
    std::string suite;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string out_path;
};

// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
// Keys: domain, n, p, phi, f, the six solver options, direction, count, c1.
// Unknown keys, unparsable values and out-of-range values throw ConfigError
// with the offending line number.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

enum class Command { norm, solve, stability, check };

// Runs one command against a parsed config.  Writes cfg.out_path (except
// `norm`, which prints to `out`), returns the process exit status, and
// reports failures as a one-line `error: <stage>: <reason>` on `err`.
int dispatch(Command command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string format_real(double v);   // 17 significant digits, C locale

void write_solution_csv(std::ostream& os, const Mesh& mesh, const SolveResult& result);
void write_stability_csv(std::ostream& os, const StabilityReport& report);
void write_check_csv(std::ostream& os, const std::vector<CheckRow>& rows);

}  // namespace pxlap
