#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>

#include "stagger/errors.hpp"

namespace stagger::cli {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) known = known || it.key() == key;
        if (!known) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

double number(const json& j, const char* key, double fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where + "." + key + " must be finite");
    return d;
}

long integer(const json& j, const char* key, long fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
    return v.get<long>();
}

bool boolean(const json& j, const char* key, bool fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
    return v.get<bool>();
}

double positive(double v, const std::string& name) {
    if (!(v > 0.0)) throw ConfigError(name + " must be positive");
    return v;
}

void parse_scenario(const json& j, RunConfig& c) {
    const std::string where = "scenario";
    require_object(j, where);
    reject_unknown(j, {"omega_re", "omega_im", "theta_deg", "amplitude_re", "amplitude_im", "kind", "N", "M"},
                   where);
    for (const char* key : {"omega_re", "omega_im", "theta_deg", "kind", "N", "M"}) {
        if (!j.contains(key)) throw ConfigError("missing scenario." + std::string(key));
    }
    ScatteringScenario& s = c.scenario;
    s.omega = cplx(number(j, "omega_re", 0.0, where), number(j, "omega_im", 0.0, where));
    c.theta_deg = number(j, "theta_deg", 0.0, where);
    s.theta = c.theta_deg * std::numbers::pi / 180.0;
    s.amplitude = cplx(number(j, "amplitude_re", 1.0, where), number(j, "amplitude_im", 0.0, where));
    if (!j.at("kind").is_string()) throw ConfigError("scenario.kind must be a string");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "crack") {
        s.kind = DefectKind::CrackPair;
    } else if (kind == "constraint") {
        s.kind = DefectKind::ConstraintPair;
    } else {
        throw ConfigError("scenario.kind must be 'crack' or 'constraint'");
    }
    s.n_sep = static_cast<int>(integer(j, "N", 1, where));
    s.m_offset = static_cast<int>(integer(j, "M", 0, where));
    try {
        validate(s);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

void parse_numerics(const json& j, RunConfig& c) {
    const std::string where = "numerics";
    require_object(j, where);
    reject_unknown(j,
                   {"contour_radius", "samples", "auto_refine", "tail_tolerance", "max_samples", "oracle_ng",
                    "oracle_tolerance", "oracle_max_iterations", "residual_tolerance"},
                   where);
    NumericsOptions& n = c.numerics;
    if (j.contains("contour_radius")) {
        const json& r = j.at("contour_radius");
        if (r.is_string()) {
            if (r.get<std::string>() != "auto") throw ConfigError("numerics.contour_radius must be 'auto' or a number");
        } else {
            n.contour_radius = positive(number(j, "contour_radius", 1.0, where), "numerics.contour_radius");
        }
    }
    const long samples = integer(j, "samples", static_cast<long>(n.samples), where);
    if (samples < 4 || (samples & (samples - 1)) != 0) {
        throw ConfigError("numerics.samples must be a power of two >= 4");
    }
    n.samples = static_cast<std::size_t>(samples);
    n.auto_refine = boolean(j, "auto_refine", n.auto_refine, where);
    n.tail_tolerance = positive(number(j, "tail_tolerance", n.tail_tolerance, where), "numerics.tail_tolerance");
    const long max_samples = integer(j, "max_samples", static_cast<long>(n.max_samples), where);
    if (max_samples < samples) throw ConfigError("numerics.max_samples must be at least numerics.samples");
    n.max_samples = static_cast<std::size_t>(max_samples);
    c.oracle.ng = static_cast<int>(integer(j, "oracle_ng", c.oracle.ng, where));
    if (c.oracle.ng < 0) throw ConfigError("numerics.oracle_ng must be non-negative");
    c.oracle.tolerance = positive(number(j, "oracle_tolerance", c.oracle.tolerance, where), "numerics.oracle_tolerance");
    c.oracle.max_iterations = static_cast<int>(integer(j, "oracle_max_iterations", c.oracle.max_iterations, where));
    positive(c.oracle.max_iterations, "numerics.oracle_max_iterations");
    c.residual_tolerance =
        positive(number(j, "residual_tolerance", c.residual_tolerance, where), "numerics.residual_tolerance");
}

void parse_outputs(const json& j, RunConfig& c) {
    const std::string where = "outputs";
    require_object(j, where);
    reject_unknown(j, {"directory", "window", "emit_fields", "emit_segments", "emit_factors", "emit_kernel_table"},
                   where);
    OutputOptions& o = c.outputs;
    if (j.contains("directory")) {
        if (!j.at("directory").is_string()) throw ConfigError("outputs.directory must be a string");
        o.directory = j.at("directory").get<std::string>();
    }
    if (j.contains("window")) {
        const json& w = j.at("window");
        require_object(w, "outputs.window");
        reject_unknown(w, {"x_min", "x_max", "y_min", "y_max"}, "outputs.window");
        const std::string ww = "outputs.window";
        o.window.x_min = integer(w, "x_min", o.window.x_min, ww);
        o.window.x_max = integer(w, "x_max", o.window.x_max, ww);
        o.window.y_min = integer(w, "y_min", o.window.y_min, ww);
        o.window.y_max = integer(w, "y_max", o.window.y_max, ww);
        if (o.window.width() <= 0 || o.window.height() <= 0) throw ConfigError("outputs.window is empty");
    }
    o.emit_fields = boolean(j, "emit_fields", o.emit_fields, where);
    o.emit_segments = boolean(j, "emit_segments", o.emit_segments, where);
    o.emit_factors = boolean(j, "emit_factors", o.emit_factors, where);
    o.emit_kernel_table = boolean(j, "emit_kernel_table", o.emit_kernel_table, where);
}

}  // namespace

RunConfig parse_config(const json& doc) {
    require_object(doc, "configuration");
    reject_unknown(doc, {"scenario", "numerics", "outputs"}, "configuration");
    if (!doc.contains("scenario")) throw ConfigError("missing scenario block");
    RunConfig c;
    c.source = doc;
    parse_scenario(doc.at("scenario"), c);
    if (doc.contains("numerics")) parse_numerics(doc.at("numerics"), c);
    if (doc.contains("outputs")) parse_outputs(doc.at("outputs"), c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    return parse_config(doc);
}

json scenario_json(const RunConfig& config) {
    const ScatteringScenario& s = config.scenario;
    return {{"omega_re", s.omega.real()},       {"omega_im", s.omega.imag()},
            {"theta_deg", config.theta_deg},    {"amplitude_re", s.amplitude.real()},
            {"amplitude_im", s.amplitude.imag()}, {"kind", kind_name(s.kind)},
            {"N", s.n_sep},                     {"M", s.m_offset}};
}

}  // namespace stagger::cli
