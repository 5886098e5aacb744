#include "wqed/runner/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wqed/evolve.hpp"
#include "wqed/spectral.hpp"

namespace wqed::runner {

namespace {

using json = nlohmann::json;

std::string join(std::string_view prefix, std::string_view key)
{
    return prefix.empty() ? std::string(key) : std::string(prefix) + "." + std::string(key);
}

void require_object(const json& j, std::string_view path)
{
    if (!j.is_object())
        throw ConfigError("field '" + std::string(path.empty() ? "<root>" : path) + "': expected an object");
}

void reject_unknown(const json& j, std::string_view path, std::initializer_list<std::string_view> known)
{
    for (const auto& [key, value] : j.items()) {
        bool found = false;
        for (auto k : known) found = found || key == k;
        if (!found) throw ConfigError("unknown key '" + join(path, key) + "'");
    }
}

double read_number(const json& j, const std::string& path)
{
    if (!j.is_number()) throw ConfigError("field '" + path + "': expected a number");
    return j.get<double>();
}

int read_int(const json& j, const std::string& path)
{
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::floor(v) == v && std::abs(v) < 1e9) return static_cast<int>(v);
    }
    throw ConfigError("field '" + path + "': expected an integer");
}

std::string read_string(const json& j, const std::string& path)
{
    if (!j.is_string()) throw ConfigError("field '" + path + "': expected a string");
    return j.get<std::string>();
}

SweepAxis read_axis(const json& j, const std::string& path)
{
    require_object(j, path);
    reject_unknown(j, path, {"parameter", "min", "max", "points"});
    SweepAxis a;
    if (!j.contains("parameter")) throw ConfigError("field '" + path + ".parameter' is required");
    a.parameter = read_string(j["parameter"], path + ".parameter");
    if (j.contains("min")) a.min = read_number(j["min"], path + ".min");
    if (j.contains("max")) a.max = read_number(j["max"], path + ".max");
    if (j.contains("points")) a.points = read_int(j["points"], path + ".points");
    return a;
}

ScenarioConfig from_json(const json& root)
{
    require_object(root, "");
    reject_unknown(root, "", {"geometry", "drive", "initial_state", "time", "outputs", "sweep"});
    ScenarioConfig c;

    if (root.contains("geometry")) {
        const auto& g = root["geometry"];
        require_object(g, "geometry");
        reject_unknown(g, "geometry", {"kind", "spacing_over_pi", "gamma0"});
        if (g.contains("kind")) c.geometry.kind = read_string(g["kind"], "geometry.kind");
        if (g.contains("spacing_over_pi"))
            c.geometry.spacing_over_pi = read_number(g["spacing_over_pi"], "geometry.spacing_over_pi");
        if (g.contains("gamma0")) c.geometry.gamma0 = read_number(g["gamma0"], "geometry.gamma0");
    }
    if (root.contains("drive")) {
        const auto& d = root["drive"];
        require_object(d, "drive");
        reject_unknown(d, "drive", {"rabi", "detuning", "convention"});
        if (d.contains("rabi")) c.drive.rabi = read_number(d["rabi"], "drive.rabi");
        if (d.contains("detuning")) c.drive.detuning = read_number(d["detuning"], "drive.detuning");
        if (d.contains("convention")) c.drive.convention = read_string(d["convention"], "drive.convention");
    }
    if (root.contains("initial_state")) {
        const auto& s = root["initial_state"];
        require_object(s, "initial_state");
        reject_unknown(s, "initial_state", {"named", "amplitudes"});
        if (s.contains("named")) c.initial_state.named = read_string(s["named"], "initial_state.named");
        if (s.contains("amplitudes")) {
            const auto& a = s["amplitudes"];
            if (!a.is_array()) throw ConfigError("field 'initial_state.amplitudes': expected an array");
            for (std::size_t k = 0; k < a.size(); ++k) {
                const std::string p = "initial_state.amplitudes." + std::to_string(k);
                if (a[k].is_number()) {
                    c.initial_state.amplitudes.emplace_back(a[k].get<double>(), 0.0);
                } else if (a[k].is_array() && a[k].size() == 2) {
                    c.initial_state.amplitudes.emplace_back(read_number(a[k][0], p + ".0"),
                                                            read_number(a[k][1], p + ".1"));
                } else {
                    throw ConfigError("field '" + p + "': expected a number or [re, im]");
                }
            }
        }
    }
    if (root.contains("time")) {
        const auto& t = root["time"];
        require_object(t, "time");
        reject_unknown(t, "time", {"t_max", "samples"});
        if (t.contains("t_max")) c.time.t_max = read_number(t["t_max"], "time.t_max");
        if (t.contains("samples")) c.time.samples = read_int(t["samples"], "time.samples");
    }
    if (root.contains("outputs")) {
        const auto& o = root["outputs"];
        if (!o.is_array()) throw ConfigError("field 'outputs': expected an array of strings");
        for (std::size_t k = 0; k < o.size(); ++k)
            c.outputs.push_back(read_string(o[k], "outputs." + std::to_string(k)));
    }
    if (root.contains("sweep")) {
        const auto& s = root["sweep"];
        if (s.is_object()) {
            c.sweep.push_back(read_axis(s, "sweep"));
        } else if (s.is_array()) {
            for (std::size_t k = 0; k < s.size(); ++k)
                c.sweep.push_back(read_axis(s[k], "sweep." + std::to_string(k)));
        } else if (!s.is_null()) {
            throw ConfigError("field 'sweep': expected an object or an array of objects");
        }
    }
    c.validate();
    return c;
}

json to_json(const ScenarioConfig& c)
{
    json j;
    j["geometry"] = {{"kind", c.geometry.kind},
                     {"spacing_over_pi", c.geometry.spacing_over_pi},
                     {"gamma0", c.geometry.gamma0}};
    j["drive"] = {{"rabi", c.drive.rabi}, {"detuning", c.drive.detuning}, {"convention", c.drive.convention}};
    json init = {{"named", c.initial_state.named}};
    if (!c.initial_state.amplitudes.empty()) {
        json amps = json::array();
        for (const auto& a : c.initial_state.amplitudes) amps.push_back({a.real(), a.imag()});
        init["amplitudes"] = amps;
    }
    j["initial_state"] = init;
    j["time"] = {{"t_max", c.time.t_max}, {"samples", c.time.samples}};
    j["outputs"] = c.outputs;
    json axes = json::array();
    for (const auto& a : c.sweep)
        axes.push_back({{"parameter", a.parameter}, {"min", a.min}, {"max", a.max}, {"points", a.points}});
    j["sweep"] = axes;
    return j;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

void check_finite(double v, const char* name)
{
    if (!std::isfinite(v)) throw ConfigError(std::string("field '") + name + "' must be finite");
}

double parse_double(std::string_view text, std::string_view path)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("override '" + std::string(path) + "': '" + std::string(text) + "' is not a number");
    return v;
}

int parse_int(std::string_view text, std::string_view path)
{
    const double v = parse_double(text, path);
    if (std::floor(v) != v || std::abs(v) > 1e9)
        throw ConfigError("override '" + std::string(path) + "': '" + std::string(text) + "' is not an integer");
    return static_cast<int>(v);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

SweepAxis& axis_at(ScenarioConfig& cfg, std::string_view index, std::string_view path)
{
    const int k = parse_int(index, path);
    if (k < 0 || k > 1) throw ConfigError("invalid override path '" + std::string(path) + "'");
    while (static_cast<int>(cfg.sweep.size()) <= k) cfg.sweep.emplace_back();
    return cfg.sweep[static_cast<std::size_t>(k)];
}

double* numeric_field(ScenarioConfig& cfg, std::string_view path)
{
    if (path == "geometry.spacing_over_pi") return &cfg.geometry.spacing_over_pi;
    if (path == "geometry.gamma0") return &cfg.geometry.gamma0;
    if (path == "drive.rabi") return &cfg.drive.rabi;
    if (path == "drive.detuning") return &cfg.drive.detuning;
    if (path == "time.t_max") return &cfg.time.t_max;
    return nullptr;
}

} // namespace

void ScenarioConfig::validate() const
{
    if (!parse_geometry(geometry.kind))
        throw ConfigError("field 'geometry.kind': unknown geometry '" + geometry.kind + "'");
    check_finite(geometry.spacing_over_pi, "geometry.spacing_over_pi");
    check_finite(geometry.gamma0, "geometry.gamma0");
    if (!(geometry.gamma0 > 0.0)) throw ConfigError("field 'geometry.gamma0' must be positive");
    check_finite(drive.rabi, "drive.rabi");
    check_finite(drive.detuning, "drive.detuning");
    if (drive.convention != "rabi_frequency" && drive.convention != "literal")
        throw ConfigError("field 'drive.convention': expected 'rabi_frequency' or 'literal'");
    if (initial_state.amplitudes.empty()) {
        static const char* names[] = {"gg", "ge", "eg", "ee", "beta", "psi_plus", "psi_minus"};
        bool ok = false;
        for (const char* n : names) ok = ok || initial_state.named == n;
        if (!ok) throw ConfigError("field 'initial_state.named': unknown state '" + initial_state.named + "'");
    } else {
        for (const auto& a : initial_state.amplitudes)
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw ConfigError("field 'initial_state.amplitudes' must be finite");
    }
    check_finite(time.t_max, "time.t_max");
    if (!(time.t_max > 0.0)) throw ConfigError("field 'time.t_max' must be positive");
    if (time.samples < 2) throw ConfigError("field 'time.samples' must be at least 2");
    if (sweep.size() > 2) throw ConfigError("field 'sweep': at most two axes are supported");
    for (std::size_t k = 0; k < sweep.size(); ++k) {
        const auto& a = sweep[k];
        const std::string p = "sweep." + std::to_string(k);
        ScenarioConfig probe;
        if (!numeric_field(probe, a.parameter) || a.parameter == "time.t_max")
            throw ConfigError("field '" + p + ".parameter': cannot sweep '" + a.parameter + "'");
        check_finite(a.min, (p + ".min").c_str());
        check_finite(a.max, (p + ".max").c_str());
        if (a.points < 1) throw ConfigError("field '" + p + ".points' must be at least 1");
    }
}

ScenarioConfig parse_config(std::string_view text, std::string_view source)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": JSON syntax error");
    }
    try {
        return from_json(root);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    }
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string config_to_json(const ScenarioConfig& cfg)
{
    return to_json(cfg).dump(2) + "\n";
}

void save_config(const ScenarioConfig& cfg, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write config file '" + path.string() + "'");
    out << config_to_json(cfg);
    if (!out) throw IoError("failed writing config file '" + path.string() + "'");
}

void set_numeric(ScenarioConfig& cfg, std::string_view path, double value)
{
    double* field = numeric_field(cfg, path);
    if (!field) throw ConfigError("invalid override path '" + std::string(path) + "'");
    *field = value;
}

void set_parameter(ScenarioConfig& cfg, std::string_view path, std::string_view value)
{
    if (double* field = numeric_field(cfg, path)) {
        *field = parse_double(value, path);
        return;
    }
    const std::string v(value);
    if (path == "geometry.kind") {
        cfg.geometry.kind = v;
    } else if (path == "drive.convention") {
        cfg.drive.convention = v;
    } else if (path == "initial_state.named") {
        cfg.initial_state.named = v;
        cfg.initial_state.amplitudes.clear();
    } else if (path == "time.samples") {
        cfg.time.samples = parse_int(value, path);
    } else if (path == "outputs") {
        cfg.outputs.clear();
        if (!value.empty())
            for (auto part : split(value, ',')) cfg.outputs.emplace_back(part);
    } else if (path.starts_with("sweep.")) {
        const auto parts = split(path, '.');
        if (parts.size() != 3) throw ConfigError("invalid override path '" + std::string(path) + "'");
        SweepAxis& axis = axis_at(cfg, parts[1], path);
        if (parts[2] == "parameter") axis.parameter = v;
        else if (parts[2] == "min") axis.min = parse_double(value, path);
        else if (parts[2] == "max") axis.max = parse_double(value, path);
        else if (parts[2] == "points") axis.points = parse_int(value, path);
        else throw ConfigError("invalid override path '" + std::string(path) + "'");
    } else {
        throw ConfigError("invalid override path '" + std::string(path) + "'");
    }
}

void apply_override(ScenarioConfig& cfg, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
    set_parameter(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

AtomLayout layout_of(const ScenarioConfig& cfg)
{
    return make_layout(cfg.geometry.kind, cfg.geometry.spacing_over_pi * kPi, cfg.geometry.gamma0);
}

DriveSpec drive_of(const ScenarioConfig& cfg)
{
    DriveSpec d;
    d.rabi = cfg.drive.rabi;
    d.detuning = cfg.drive.detuning;
    d.convention = cfg.drive.convention == "literal" ? DriveConvention::literal : DriveConvention::rabi_frequency;
    return d;
}

DensityMatrix initial_state_of(const ScenarioConfig& cfg)
{
    const auto layout = layout_of(cfg);
    const int n = static_cast<int>(layout.size());
    const auto& init = cfg.initial_state;
    if (!init.amplitudes.empty()) {
        const auto dim = static_cast<std::size_t>(Eigen::Index{1} << n);
        if (init.amplitudes.size() != dim)
            throw ConfigError("field 'initial_state.amplitudes': expected " + std::to_string(dim) + " entries");
        Vector ket(static_cast<Eigen::Index>(dim));
        for (std::size_t k = 0; k < dim; ++k) ket(static_cast<Eigen::Index>(k)) = init.amplitudes[k];
        if (!(ket.norm() > 0.0)) throw ConfigError("field 'initial_state.amplitudes' is the zero vector");
        return DensityMatrix::pure(ket.normalized());
    }
    const std::string& name = init.named;
    if (name == "beta") {
        if (n != 2) throw ConfigError("initial state 'beta' needs two atoms");
        return DensityMatrix::pure(bell_singlet());
    }
    if (name == "psi_plus" || name == "psi_minus") {
        const auto pair = dressed_states(coupling_set(layout));
        return DensityMatrix::pure(name == "psi_plus" ? pair.ket_plus() : pair.ket_minus());
    }
    if (n != 2) throw ConfigError("named initial state '" + name + "' needs two atoms");
    const unsigned idx = name == "gg" ? 0u : name == "ge" ? 1u : name == "eg" ? 2u : 3u;
    return DensityMatrix::pure(basis_ket(2, idx));
}

} // namespace wqed::runner
