// config.hpp: scenario configuration (JSON) and parameter overrides

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wqed/layout.hpp"
#include "wqed/liouvillian.hpp"

namespace wqed::runner {

struct GeometryConfig {
    std::string kind = "nested";
    double spacing_over_pi = 0.01;  // kappa*dx / pi
    double gamma0 = 1.0;
    bool operator==(const GeometryConfig&) const = default;
};

struct DriveConfig {
    double rabi = 0.0;
    double detuning = 0.0;
    std::string convention = "rabi_frequency";  // or "literal"
    bool operator==(const DriveConfig&) const = default;
};

/// Either a named state (gg, ge, eg, ee, beta, psi_plus, psi_minus) or explicit amplitudes.
struct InitialStateConfig {
    std::string named = "gg";
    std::vector<cplx> amplitudes;  // overrides `named` when non-empty
    bool operator==(const InitialStateConfig&) const = default;
};

struct TimeConfig {
    double t_max = 100.0;
    int samples = 201;
    bool operator==(const TimeConfig&) const = default;
};

struct SweepAxis {
    std::string parameter;  // e.g. "drive.rabi", "geometry.spacing_over_pi"
    double min = 0.0;
    double max = 0.0;
    int points = 1;
    bool operator==(const SweepAxis&) const = default;
};

struct ScenarioConfig {
    GeometryConfig geometry;
    DriveConfig drive;
    InitialStateConfig initial_state;
    TimeConfig time;
    std::vector<std::string> outputs;
    std::vector<SweepAxis> sweep;  // zero, one or two axes

    bool operator==(const ScenarioConfig&) const = default;

    /// Throws ConfigError on non-finite numbers, samples < 2, points < 1, bad names.
    void validate() const;
};

/// Parses JSON text. Unknown keys and type mismatches raise ConfigError naming the field;
/// syntax errors report line and column.
ScenarioConfig parse_config(std::string_view text, std::string_view source = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

std::string config_to_json(const ScenarioConfig& cfg);
void save_config(const ScenarioConfig& cfg, const std::filesystem::path& path);

/// Applies `path=value` (e.g. "drive.rabi", "geometry.kind", "sweep.0.points", "outputs").
void set_parameter(ScenarioConfig& cfg, std::string_view path, std::string_view value);
/// Numeric fields only; used by the sweep engine.
void set_numeric(ScenarioConfig& cfg, std::string_view path, double value);
/// Parses "key=value".
void apply_override(ScenarioConfig& cfg, std::string_view assignment);

AtomLayout layout_of(const ScenarioConfig& cfg);
DriveSpec drive_of(const ScenarioConfig& cfg);
DensityMatrix initial_state_of(const ScenarioConfig& cfg);

} // namespace wqed::runner
