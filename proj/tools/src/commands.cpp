#include "commands.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "stagger/errors.hpp"
#include "stagger/factorization.hpp"
#include "stagger/kernel.hpp"

#ifndef STAGGER_VERSION
#define STAGGER_VERSION "0.0.0"
#endif

namespace stagger::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Shortest round-trip representation, independent of the locale.
std::string num(double v) { return fmt::format("{}", v); }

fs::path prepare_dir(const fs::path& dir) {
    fs::create_directories(dir);
    return dir;
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json numerics_json(const PreparedScenario& p) {
    return {{"contour_radius", p.radius()},
            {"samples", p.samples()},
            {"radius_lower", p.bounds.lower},
            {"radius_upper", p.bounds.upper}};
}

void write_manifest(const RunConfig& config, const std::string& command, const json& numerics,
                    const json& diagnostics, const json& extra = json::object()) {
    json m;
    m["tool"] = "stagger";
    m["version"] = STAGGER_VERSION;
    m["command"] = command;
    m["scenario"] = scenario_json(config);
    m["numerics"] = numerics;
    m["diagnostics"] = diagnostics;
    m["seed"] = nullptr;  // every pipeline is deterministic
    m["config"] = config.source;
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
    std::ofstream out(prepare_dir(config.outputs.directory) / "manifest.json");
    out << m.dump(2) << '\n';
}

void write_field_csv(const fs::path& path, const LatticeField& field, const FieldWindow& window) {
    auto out = fmt::output_file(path.string());
    out.print("x,y,re,im,abs,re_total\n");
    for (long y = window.y_min; y <= window.y_max; ++y) {
        for (long x = window.x_min; x <= window.x_max; ++x) {
            const cplx u = field.at(x, y);
            out.print("{},{},{},{},{},{}\n", x, y, num(u.real()), num(u.imag()), num(std::abs(u)),
                      num(field.total(x, y).real()));
        }
    }
}

void write_segments_csv(const fs::path& path, const std::vector<long>& sites, const std::vector<cplx>& values) {
    auto out = fmt::output_file(path.string());
    out.print("x,re,im,abs\n");
    for (std::size_t j = 0; j < sites.size(); ++j) {
        out.print("{},{},{},{}\n", sites[j], num(values[j].real()), num(values[j].imag()), num(std::abs(values[j])));
    }
}

void write_factor_csv(const fs::path& path, const LaurentSeries& s) {
    auto out = fmt::output_file(path.string());
    out.print("m,re,im\n");
    for (long m = s.lo(); m <= s.hi(); ++m) {
        const cplx c = s.coeff(m);
        out.print("{},{},{}\n", m, num(c.real()), num(c.imag()));
    }
}

void write_kernel_table(const fs::path& path, const KernelBundle& k) {
    auto out = fmt::output_file(path.string());
    out.print("k,z_re,z_im,H_re,H_im,h_re,h_im,r_re,r_im,lambda_re,lambda_im,alpha_re,alpha_im,beta_re,beta_im\n");
    for (std::size_t i = 0; i < k.grid.size(); ++i) {
        const cplx v[7] = {k.grid.node(i), k.H[i], k.h[i], k.r[i], k.lam[i], k.alpha[i], k.beta[i]};
        std::string line = std::to_string(i);
        for (const cplx c : v) line += "," + num(c.real()) + "," + num(c.imag());
        out.print("{}\n", line);
    }
}

std::vector<cplx> to_vector(const Eigen::VectorXcd& v, long count) {
    std::vector<cplx> out(static_cast<std::size_t>(count));
    for (long j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = v(j);
    return out;
}

bool residual_ok(const ReducedSolution& r, double tol) { return r.residual <= tol * std::max(1.0, r.rhs_norm); }

// One CSV table keyed by (x) or (x, y).
struct CsvTable {
    bool has_y = false;
    std::map<std::pair<long, long>, cplx> values;
};

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::string header;
    std::getline(in, header);
    std::vector<std::string> columns;
    {
        std::stringstream ss(header);
        std::string col;
        while (std::getline(ss, col, ',')) columns.push_back(col);
    }
    const auto find = [&](const std::string& name) {
        const auto it = std::find(columns.begin(), columns.end(), name);
        return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
    };
    const int ix = find("x");
    const int iy = find("y");
    const int ire = find("re");
    const int iim = find("im");
    if (ix < 0 || ire < 0 || iim < 0) throw ConfigError(path.string() + " lacks x, re, im columns");
    CsvTable table;
    table.has_y = iy >= 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != columns.size()) throw ConfigError(path.string() + " has a ragged row");
        try {
            const long x = std::stol(cells[static_cast<std::size_t>(ix)]);
            const long y = iy >= 0 ? std::stol(cells[static_cast<std::size_t>(iy)]) : 0;
            table.values[{x, y}] = cplx(std::stod(cells[static_cast<std::size_t>(ire)]),
                                        std::stod(cells[static_cast<std::size_t>(iim)]));
        } catch (const std::exception&) {
            throw ConfigError(path.string() + " has a non-numeric entry");
        }
    }
    return table;
}

}  // namespace

int run_factorize(const RunConfig& config, const std::string& function) {
    const PreparedScenario p = prepare(config.scenario, config.numerics);
    const KernelBundle& k = p.kernel;
    std::vector<cplx> samples;
    if (function == "alpha") {
        samples = k.alpha;
    } else if (function == "beta") {
        samples = k.beta;
    } else if (function == "Lk" || function == "Lc") {
        samples.resize(k.grid.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            samples[i] = function == "Lk" ? k.h[i] / k.r[i] : k.Q[i] / (k.r[i] * k.h[i]);
        }
    } else {
        throw ConfigError("unknown function '" + function + "'");
    }
    const FactorPair pair = cauchy_factorize(samples, k.grid, function);
    const double residual = product_residual(pair, samples);
    const fs::path dir = prepare_dir(config.outputs.directory);
    if (config.outputs.emit_factors) {
        write_factor_csv(dir / ("factor_" + function + "_plus.csv"), pair.plus);
        write_factor_csv(dir / ("factor_" + function + "_minus.csv"), pair.minus);
    }
    if (config.outputs.emit_kernel_table) write_kernel_table(dir / "kernel_table.csv", k);
    const bool ok = residual < config.residual_tolerance;
    write_manifest(config, "factorize", numerics_json(p),
                   {{"function", function},
                    {"product_residual", residual},
                    {"winding_number", winding_number(samples)},
                    {"plus_at_infinity", complex_json(pair.plus_at_infinity())},
                    {"minus_at_zero", complex_json(pair.minus_at_zero())},
                    {"ok", ok}});
    fmt::print("factorize {}: product residual {:.3e} ({})\n", function, residual, ok ? "ok" : "above tolerance");
    return ok ? 0 : 1;
}

int run_solve(const RunConfig& config) {
    const PreparedScenario p = prepare(config.scenario, config.numerics);
    ReducedSolution reduced;
    json diagnostics;
    json extra = json::object();
    if (config.scenario.kind == DefectKind::CrackPair) {
        reduced = solve_crack(p);
    } else {
        const ConstraintSolution sol = solve_constraint(p);
        reduced = sol.system;
        diagnostics["g_inc_max"] = sol.g_inc_max;
        extra["extras"] = {{"u_t_m1_0", complex_json(sol.u_m10())}, {"u_t_Mm1_N", complex_json(sol.u_Mm1N())}};
    }
    const long n = static_cast<long>(reduced.sites.size());
    diagnostics["system_size"] = reduced.matrix.rows();
    diagnostics["residual"] = reduced.residual;
    diagnostics["rhs_norm"] = reduced.rhs_norm;
    diagnostics["condition"] = reduced.condition;
    const bool ok = residual_ok(reduced, config.residual_tolerance);
    diagnostics["ok"] = ok;
    if (config.outputs.emit_segments) {
        write_segments_csv(prepare_dir(config.outputs.directory) / "segments.csv", reduced.sites,
                           to_vector(reduced.unknowns, n));
    }
    write_manifest(config, "solve", numerics_json(p), diagnostics, extra);
    fmt::print("solve {}: {} unknowns, residual {:.3e}, condition {:.3e}\n", kind_name(config.scenario.kind),
               reduced.matrix.rows(), reduced.residual, reduced.condition);
    return ok ? 0 : 1;
}

int run_field(const RunConfig& config) {
    const FieldRun run = stagger::run_field(config.scenario, config.outputs.window, config.numerics);
    const fs::path dir = prepare_dir(config.outputs.directory);
    if (config.outputs.emit_fields) write_field_csv(dir / "field.csv", run.field, config.outputs.window);
    if (config.outputs.emit_segments) {
        const long n = static_cast<long>(run.reduced.sites.size());
        write_segments_csv(dir / "segments.csv", run.reduced.sites, to_vector(run.reduced.unknowns, n));
    }
    const bool ok = run.wh_residual < config.residual_tolerance &&
                    residual_ok(run.reduced, config.residual_tolerance) &&
                    run.g_inc_max < config.residual_tolerance;
    json diagnostics = {{"wh_residual", run.wh_residual},
                        {"system_residual", run.reduced.residual},
                        {"condition", run.reduced.condition},
                        {"helmholtz_residual", off_defect_residual(run.field, config.scenario)},
                        {"ok", ok}};
    if (config.scenario.kind == DefectKind::ConstraintPair) diagnostics["g_inc_max"] = run.g_inc_max;
    write_manifest(config, "field", numerics_json(run.prepared), diagnostics);
    fmt::print("field: window {}x{}, WH residual {:.3e}\n", config.outputs.window.width(),
               config.outputs.window.height(), run.wh_residual);
    return ok ? 0 : 1;
}

int run_oracle(const RunConfig& config) {
    const OracleResult result = solve_grid(config.scenario, config.oracle);
    const fs::path dir = prepare_dir(config.outputs.directory);
    const FieldWindow& grid = result.field.window;
    FieldWindow window = config.outputs.window;
    window.x_min = std::max(window.x_min, grid.x_min);
    window.x_max = std::min(window.x_max, grid.x_max);
    window.y_min = std::max(window.y_min, grid.y_min);
    window.y_max = std::min(window.y_max, grid.y_max);
    if (config.outputs.emit_fields) write_field_csv(dir / "oracle_field.csv", result.field, window);
    const std::vector<cplx> traces = extract_traces(result.field, config.scenario);
    const std::vector<long> sites = segment_sites(config.scenario.m_offset);
    if (config.outputs.emit_segments) {
        write_segments_csv(dir / "oracle_segments.csv", sites,
                           std::vector<cplx>(traces.begin(), traces.begin() + static_cast<long>(sites.size())));
    }
    json extra = json::object();
    if (config.scenario.kind == DefectKind::ConstraintPair) {
        extra["extras"] = {{"u_t_m1_0", complex_json(traces[sites.size()])},
                           {"u_t_Mm1_N", complex_json(traces[sites.size() + 1])}};
    }
    write_manifest(config, "oracle",
                   {{"ng", grid.x_max}, {"tolerance", config.oracle.tolerance}},
                   {{"residual", result.residual},
                    {"iterations", result.iterations},
                    {"direct_fallback", result.direct_fallback}},
                   extra);
    fmt::print("oracle: Ng {}, residual {:.3e}, {} iterations{}\n", grid.x_max, result.residual, result.iterations,
               result.direct_fallback ? " (sparse LU)" : "");
    return 0;
}

int run_compare(const fs::path& first, const fs::path& second, const fs::path& out_dir) {
    const CsvTable a = read_csv(first);
    const CsvTable b = read_csv(second);
    if (a.has_y != b.has_y) throw ConfigError("cannot compare a field table with a segment table");
    auto out = fmt::output_file((prepare_dir(out_dir) / "compare.csv").string());
    out.print("{}\n", a.has_y ? "x,y,abs_err,rel_err" : "x,abs_err,rel_err");
    double max_abs = 0.0;
    double max_rel = 0.0;
    std::size_t matched = 0;
    std::size_t missing = 0;
    for (const auto& [key, va] : a.values) {
        const auto it = b.values.find(key);
        if (it == b.values.end()) {
            ++missing;
            continue;
        }
        ++matched;
        const double err = std::abs(va - it->second);
        const double scale = std::abs(it->second);
        const double rel = scale > 0.0 ? err / scale : (err > 0.0 ? INFINITY : 0.0);
        max_abs = std::max(max_abs, err);
        max_rel = std::max(max_rel, rel);
        if (a.has_y) {
            out.print("{},{},{},{}\n", key.first, key.second, num(err), num(rel));
        } else {
            out.print("{},{},{}\n", key.first, num(err), num(rel));
        }
    }
    for (const auto& entry : b.values) missing += a.values.count(entry.first) ? 0 : 1;
    const json summary = {{"matched", matched}, {"missing", missing}, {"max_abs_error", max_abs},
                          {"max_rel_error", max_rel}};
    std::ofstream(out_dir / "compare_summary.json") << summary.dump(2) << '\n';
    fmt::print("{}\n", summary.dump());
    return 0;
}

int run_checks(const RunConfig& config) {
    const ScatteringScenario& s = config.scenario;
    const double tol = config.residual_tolerance;
    struct Line {
        std::string name;
        double value;
        double limit;
    };
    std::vector<Line> lines;
    const auto add = [&](std::string name, double value, double limit) {
        lines.push_back({std::move(name), value, limit});
    };

    const PreparedScenario p = prepare(s, config.numerics);
    const KernelBundle& k = p.kernel;
    add("dispersion residual", dispersion_residual(s.omega, s.theta, p.wave.kappa), 1e-12);
    double lam_q = 0.0, ratio = 0.0, h_sq = 0.0;
    for (std::size_t i = 0; i < k.grid.size(); ++i) {
        lam_q = std::max(lam_q, std::abs(k.lam[i] + 1.0 / k.lam[i] - k.Q[i]));
        ratio = std::max(ratio, std::abs((1.0 - k.lam[i]) / (1.0 + k.lam[i]) - k.h[i] / k.r[i]));
        h_sq = std::max({h_sq, std::abs(k.h[i] * k.h[i] - k.H[i]), std::abs(k.r[i] * k.r[i] - k.R[i])});
    }
    add("lambda + 1/lambda - Q", lam_q, 1e-10);
    add("(1-lambda)/(1+lambda) - h/r", ratio, 1e-10);
    add("h^2 - H, r^2 - R", h_sq, 1e-13);
    add("alpha factor product", product_residual(p.factors.alpha, k.alpha), tol);
    add("beta factor product", product_residual(p.factors.beta, k.beta), tol);

    const FieldRun run = stagger::run_field(s, config.outputs.window, config.numerics);
    add("reduced system residual", run.reduced.residual / std::max(1.0, run.reduced.rhs_norm), tol);
    add("Wiener-Hopf residual", run.wh_residual, tol);
    double umax = 0.0;
    for (long y = run.field.window.y_min; y <= run.field.window.y_max; ++y) {
        for (long x = run.field.window.x_min; x <= run.field.window.x_max; ++x) {
            umax = std::max(umax, std::abs(run.field.total(x, y)));
        }
    }
    add("off-defect Helmholtz residual", off_defect_residual(run.field, s), 1e-6 * umax);
    if (s.kind == DefectKind::ConstraintPair) {
        add("G^inc magnitude", run.g_inc_max, tol);
        double worst = 0.0;
        for (const auto& [x, y] : constrained_sites(s, run.field.window)) {
            worst = std::max(worst, std::abs(run.field.total(x, y)));
        }
        add("total field on constrained sites", worst, 1e-6 * umax);
    }

    NumericsOptions alt = config.numerics;
    alt.contour_radius = std::sqrt(p.bounds.lower * p.bounds.preferred);
    const FieldRun shifted = stagger::run_field(s, config.outputs.window, alt);
    double radius_dev = 0.0;
    for (std::size_t i = 0; i < run.field.scattered.size(); ++i) {
        radius_dev = std::max(radius_dev, std::abs(run.field.scattered[i] - shifted.field.scattered[i]));
    }
    add("contour independence", radius_dev, tol);
    add("stagger split sum", stagger_perturbation(s, config.outputs.window, config.numerics).sum_deviation, tol);

    ScatteringScenario doubled = s;
    doubled.amplitude *= 2.0;
    const PreparedScenario p2 = prepare(doubled, config.numerics);
    const ReducedSolution r2 =
        s.kind == DefectKind::CrackPair ? solve_crack(p2) : solve_constraint(p2).system;
    double lin = 0.0;
    for (long j = 0; j < r2.unknowns.size(); ++j) {
        lin = std::max(lin, std::abs(r2.unknowns(j) - 2.0 * run.reduced.unknowns(j)));
    }
    add("amplitude linearity", lin, 1e-10 * std::max(1.0, run.reduced.unknowns.cwiseAbs().maxCoeff()));

    bool all = true;
    json report = json::array();
    for (const Line& l : lines) {
        const bool pass = l.value <= l.limit;
        all = all && pass;
        fmt::print("{} {:<36} {:.3e} (limit {:.1e})\n", pass ? "PASS" : "FAIL", l.name, l.value, l.limit);
        report.push_back({{"name", l.name}, {"value", l.value}, {"limit", l.limit}, {"pass", pass}});
    }
    write_manifest(config, "checks", numerics_json(p), {{"checks", report}, {"ok", all}});
    return all ? 0 : 1;
}

}  // namespace stagger::cli
