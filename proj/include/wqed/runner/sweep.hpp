// sweep.hpp: per-point observables and grid sweeps over one or two config parameters

#pragma once

#include <span>
#include <string>
#include <vector>

#include "wqed/runner/config.hpp"
#include "wqed/runner/csv.hpp"

namespace wqed::runner {

/// Scalar observables available to sweeps. Populations, concurrence_ss, g2_zero, mandel_q,
/// intensity and residual refer to the steady state; concurrence_max and t_concurrence_max to
/// the trajectory from the configured initial state.
const std::vector<std::string>& scalar_observables();

/// Default when `outputs` is empty.
std::vector<std::string> default_sweep_outputs();

/// Observables for one configuration. A failing observable becomes NaN and its message is
/// appended to `errors`; other observables are still evaluated.
std::vector<double> evaluate_point(const ScenarioConfig& cfg, std::span<const std::string> observables,
                                   std::string* errors = nullptr);

struct Extremum {
    std::string observable;
    bool found = false;          // false when every value is NaN
    std::size_t index = 0;
    double value = 0.0;
    std::vector<double> at;          // parameter values at the extremum
    std::vector<double> resolution;  // grid spacing per axis (0 for a single point)
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<std::string> observables;
    std::vector<std::vector<double>> parameters;  // [point][axis]
    std::vector<std::vector<double>> values;      // [point][observable]
    std::vector<std::string> errors;              // [point], empty when every observable succeeded

    std::size_t size() const { return values.size(); }
    std::size_t failures() const;
    /// Axis parameter path or observable name.
    std::vector<double> column(const std::string& name) const;
    Extremum argmax(const std::string& observable) const;
    Extremum argmin(const std::string& observable) const;
    /// Columns: axis parameter paths, then observables. Row order is the grid order.
    Table to_table(const std::string& name) const;
};

/// Grid points of one axis (min when points == 1).
std::vector<double> axis_values(const SweepAxis& axis);

/// Evaluates the Cartesian grid of cfg.sweep (first axis outermost) in parallel; results are
/// assembled by grid index. An empty sweep evaluates the base configuration once.
/// Throws ConfigError for invalid axes or unknown observables.
SweepResult sweep(const ScenarioConfig& cfg, std::size_t workers = 0);

/// Time-resolved table of the trajectory from the configured initial state. Columns: t, then
/// `outputs` (default p_gg, p_ge, p_eg, p_ee, p_beta, concurrence).
Table trajectory_table(const ScenarioConfig& cfg, const std::string& name);

/// Observables accepted by trajectory_table.
const std::vector<std::string>& trajectory_observables();

} // namespace wqed::runner
