#include "pxlap/cli.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace pxlap {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view s, int line, const std::string& key) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(line, key + ": expected a finite number, got '" + std::string(s) + "'");
    return v;
}

int parse_int(std::string_view s, int line, const std::string& key) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(line, key + ": expected an integer, got '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

Domain parse_domain(std::string_view value, int line) {
    auto tok = split_ws(value);
    if (!tok.empty() && tok[0] == "interval") {
        if (tok.size() != 3)
            throw ConfigError(line, "domain: expected 'interval a b'");
        Interval iv{parse_double(tok[1], line, "domain"), parse_double(tok[2], line, "domain")};
        if (!(iv.a < iv.b)) throw ConfigError(line, "domain: interval needs a < b");
        return iv;
    }
    if (!tok.empty() && tok[0] == "rectangle") {
        if (tok.size() != 5)
            throw ConfigError(line, "domain: expected 'rectangle ax ay bx by'");
        Rectangle r{parse_double(tok[1], line, "domain"), parse_double(tok[2], line, "domain"),
                    parse_double(tok[3], line, "domain"), parse_double(tok[4], line, "domain")};
        if (!(r.ax < r.bx) || !(r.ay < r.by))
            throw ConfigError(line, "domain: rectangle needs ax < bx and ay < by");
        return r;
    }
    throw ConfigError(line, "domain: expected 'interval ...' or 'rectangle ...'");
}

std::string checked_expression(std::string_view value, int line, const std::string& key) {
    try {
        Expression::parse(value);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(line, key + ": " + e.what());
    }
    return std::string(value);
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view sv(raw);
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
        sv = trim(sv);
        if (sv.empty()) continue;

        auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(line, "expected 'key = value'");
        std::string key(trim(sv.substr(0, eq)));
        std::string_view value = trim(sv.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "empty key");
        if (value.empty()) throw ConfigError(line, key + ": empty value");

        if (key == "domain") {
            cfg.domain = parse_domain(value, line);
        } else if (key == "n") {
            int n = parse_int(value, line, key);
            if (n < 1) throw ConfigError(line, "n: must be at least 1, got " + std::to_string(n));
            cfg.n = n;
        } else if (key == "p") {
            cfg.p_expr = checked_expression(value, line, key);
        } else if (key == "phi") {
            cfg.phi_expr = checked_expression(value, line, key);
        } else if (key == "f") {
            cfg.f_expr = checked_expression(value, line, key);
        } else if (key == "residual_tol") {
            double v = parse_double(value, line, key);
            if (!(v > 0.0)) throw ConfigError(line, "residual_tol: must be positive");
            cfg.solver.residual_tol = v;
        } else if (key == "max_iterations") {
            int v = parse_int(value, line, key);
            if (v < 1) throw ConfigError(line, "max_iterations: must be at least 1");
            cfg.solver.max_iterations = v;
        } else if (key == "reg_initial") {
            double v = parse_double(value, line, key);
            if (!(v > 0.0)) throw ConfigError(line, "reg_initial: must be positive");
            cfg.solver.reg_initial = v;
        } else if (key == "reg_final") {
            double v = parse_double(value, line, key);
            if (!(v > 0.0)) throw ConfigError(line, "reg_final: must be positive");
            cfg.solver.reg_final = v;
        } else if (key == "armijo_c") {
            double v = parse_double(value, line, key);
            if (!(v > 0.0) || v >= 1.0)
                throw ConfigError(line, "armijo_c: must lie in (0,1)");
            cfg.solver.armijo_c = v;
        } else if (key == "backtrack_factor") {
            double v = parse_double(value, line, key);
            if (!(v > 0.0) || v >= 1.0)
                throw ConfigError(line, "backtrack_factor: must lie in (0,1)");
            cfg.solver.backtrack_factor = v;
        } else if (key == "direction") {
            if (value == "increasing") cfg.direction = ScheduleDirection::increasing;
            else if (value == "decreasing") cfg.direction = ScheduleDirection::decreasing;
            else throw ConfigError(line, "direction: expected increasing or decreasing");
        } else if (key == "count") {
            int v = parse_int(value, line, key);
            if (v < 1) throw ConfigError(line, "count: must be at least 1");
            cfg.count = v;
        } else if (key == "c1") {
            double v = parse_double(value, line, key);
            if (!(v > 0.0)) throw ConfigError(line, "c1: must be positive");
            cfg.c1 = v;
        } else {
            throw ConfigError(line, "unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_solution_csv(std::ostream& os, const Mesh& mesh, const SolveResult& result) {
    os << "vertex_id,x,y,w\n";
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        const Point& pt = mesh.vertices()[v];
        os << v << ',' << format_real(pt.x) << ',' << format_real(pt.y) << ','
           << format_real(result.w.nodal[v]) << '\n';
    }
    os << "summary," << result.iterations << ',' << format_real(result.final_energy) << ','
       << format_real(result.residual_norm) << '\n';
}

void write_stability_csv(std::ostream& os, const StabilityReport& report) {
    os << "i,sup_gap,D_grad_modular,lux_norm_diff,energy_modular_i,"
          "energy_modular_limit,modular_gap\n";
    for (const StabilityRow& r : report.rows)
        os << r.i << ',' << format_real(r.sup_gap) << ',' << format_real(r.D_grad_modular)
           << ',' << format_real(r.lux_norm_diff) << ',' << format_real(r.energy_modular_i)
           << ',' << format_real(r.energy_modular_limit) << ','
           << format_real(r.modular_gap) << '\n';
}

void write_check_csv(std::ostream& os, const std::vector<CheckRow>& rows) {
    os << "check_name,trial,lhs,rhs,satisfied\n";
    for (const CheckRow& r : rows)
        os << r.check_name << ',' << r.trial << ',' << format_real(r.gap.lhs) << ','
           << format_real(r.gap.rhs) << ',' << (r.gap.satisfied ? 1 : 0) << '\n';
}

namespace {

[[noreturn]] void missing(const char* key, const char* command) {
    throw ConfigError(std::string("missing required key '") + key + "' for " + command);
}

Mesh mesh_from(const RunConfig& cfg, const char* command) {
    if (!cfg.domain) missing("domain", command);
    if (!cfg.n) missing("n", command);
    return Mesh(*cfg.domain, *cfg.n);
}

DirichletProblem problem_from(const RunConfig& cfg, const char* command) {
    Mesh mesh = mesh_from(cfg, command);
    if (!cfg.p_expr) missing("p", command);
    if (!cfg.phi_expr) missing("phi", command);
    if (!cfg.f_expr) missing("f", command);
    ExponentField p = build_exponent(*cfg.p_expr, mesh);
    ScalarField phi = interpolate(Expression::parse(*cfg.phi_expr), mesh);
    ScalarField source = interpolate(Expression::parse(*cfg.f_expr), mesh);
    return DirichletProblem{std::move(mesh), std::move(p), std::move(phi), std::move(source)};
}

std::ofstream open_out(const std::string& path) {
    if (path.empty()) throw ConfigError("missing output path");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file '" + path + "'");
    return os;
}

int run_norm(const RunConfig& cfg, std::ostream& out) {
    Mesh mesh = mesh_from(cfg, "norm");
    if (!cfg.p_expr) missing("p", "norm");
    if (!cfg.f_expr) missing("f", "norm");
    ExponentField p = build_exponent(*cfg.p_expr, mesh);
    std::vector<double> f = eval_at_barycenters(Expression::parse(*cfg.f_expr), mesh);
    out << format_real(luxemburg_norm(f, p, mesh).value) << '\n';
    return 0;
}

int run_solve(const RunConfig& cfg) {
    DirichletProblem problem = problem_from(cfg, "solve");
    SolveResult result = solve_dirichlet(problem, cfg.solver);
    std::ofstream os = open_out(cfg.out_path);
    write_solution_csv(os, problem.mesh, result);
    return 0;
}

int run_stability_cmd(const RunConfig& cfg) {
    DirichletProblem problem = problem_from(cfg, "stability");
    if (!cfg.direction) missing("direction", "stability");
    if (!cfg.count) missing("count", "stability");
    if (!cfg.c1) missing("c1", "stability");
    ExponentSchedule schedule = make_schedule(problem.p, *cfg.direction, *cfg.count, *cfg.c1);
    StabilityReport report = run_stability(problem, schedule, cfg.solver);
    std::ofstream os = open_out(cfg.out_path);
    write_stability_csv(os, report);
    return 0;
}

int run_check(const RunConfig& cfg, std::ostream& err) {
    if (cfg.suite.empty()) throw ConfigError("missing check suite name");
    if (cfg.trials < 1) throw ConfigError("check: trials must be at least 1");
    CheckSuite suite = parse_suite_name(cfg.suite);
    CheckOutcome outcome = run_check_suite(suite, cfg.trials, cfg.seed);
    std::ofstream os = open_out(cfg.out_path);
    write_check_csv(os, outcome.rows);
    if (!outcome.all_satisfied) {
        int violations = 0;
        for (const CheckRow& r : outcome.rows)
            if (!r.gap.satisfied) ++violations;
        err << "error: check: " << violations << " violated trials in suite "
            << cfg.suite << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int dispatch(Command command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const char* stage = "config";
    try {
        switch (command) {
            case Command::norm:
                stage = "norm";
                return run_norm(cfg, out);
            case Command::solve:
                stage = "solve";
                return run_solve(cfg);
            case Command::stability:
                stage = "stability";
                return run_stability_cmd(cfg);
            case Command::check:
                stage = "check";
                return run_check(cfg, err);
        }
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << stage << ": " << e.what() << '\n';
        return 1;
    }
}

}  // namespace pxlap
