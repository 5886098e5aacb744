#include "wqed/runner/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wqed/evolve.hpp"
#include "wqed/observables.hpp"
#include "wqed/runner/sweep.hpp"
#include "wqed/spectral.hpp"

namespace wqed::runner {

namespace {

struct Variant {
    std::string label;
    ScenarioConfig cfg;
};

std::string num(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

bool overrides_key(std::span<const std::string> overrides, std::string_view prefix)
{
    for (const auto& o : overrides)
        if (std::string_view(o).starts_with(prefix)) return true;
    return false;
}

ScenarioConfig base_config(double spacing, double rabi, std::string init)
{
    ScenarioConfig c;
    c.geometry.kind = "nested";
    c.geometry.spacing_over_pi = spacing;
    c.drive.rabi = rabi;
    c.initial_state.named = std::move(init);
    return c;
}

Variant variant(std::string kind, ScenarioConfig cfg)
{
    cfg.geometry.kind = kind;
    return {std::move(kind), std::move(cfg)};
}

std::vector<Variant> apply(std::vector<Variant> variants, std::span<const std::string> overrides)
{
    for (auto& v : variants) {
        // sweep.* overrides refine the scenario's default axes, see run_sweep
        ScenarioConfig scratch;
        for (const auto& o : overrides) apply_override(o.starts_with("sweep.") ? scratch : v.cfg, o);
        v.cfg.validate();
        v.label = v.cfg.geometry.kind;
    }
    if (overrides_key(overrides, "geometry.kind=")) variants.resize(1);
    return variants;
}

SweepAxis axis(std::string parameter, double min, double max, int points)
{
    return {std::move(parameter), min, max, points};
}

// Builds a table from sweep columns under display names.
Table sweep_table(const SweepResult& r, const std::string& name,
                  const std::vector<std::pair<std::string, std::string>>& columns, const ScenarioConfig& cfg)
{
    Table t;
    t.name = name;
    std::vector<std::vector<double>> data;
    for (const auto& [display, source] : columns) {
        t.columns.push_back(display);
        const bool spacing_swept = std::any_of(r.axes.begin(), r.axes.end(), [](const SweepAxis& a) {
            return a.parameter == "geometry.spacing_over_pi";
        });
        if (source == "kdx_over_pi" && !spacing_swept) {
            data.emplace_back(r.size(), cfg.geometry.spacing_over_pi);
        } else if (source == "detuning_over_gamma") {
            auto d = r.column("drive.detuning");
            for (auto& x : d) x /= cfg.geometry.gamma0;
            data.push_back(std::move(d));
        } else {
            data.push_back(r.column(source == "kdx_over_pi" ? "geometry.spacing_over_pi" : source));
        }
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::vector<double> row;
        for (const auto& col : data) row.push_back(col[i]);
        t.add_row(std::move(row));
    }
    return t;
}

std::string extremum_note(const std::string& label, const SweepResult& r, const std::string& obs, bool maximum)
{
    const Extremum e = maximum ? r.argmax(obs) : r.argmin(obs);
    std::string s = label + ": " + (maximum ? "max " : "min ") + obs;
    if (!e.found) return s + " undefined (all points failed)";
    s += " = " + num(e.value) + " at";
    for (std::size_t a = 0; a < r.axes.size(); ++a)
        s += " " + r.axes[a].parameter + "=" + num(e.at[a]) + " (+-" + num(0.5 * e.resolution[a]) + ")";
    if (r.failures() > 0) s += "; " + std::to_string(r.failures()) + " point(s) failed";
    return s;
}

SweepResult run_sweep(ScenarioConfig cfg, std::vector<SweepAxis> default_axes, std::vector<std::string> outputs,
                      std::span<const std::string> overrides)
{
    cfg.sweep = std::move(default_axes);
    for (const auto& o : overrides)
        if (o.starts_with("sweep.")) apply_override(cfg, o);
    if (!overrides_key(overrides, "outputs=")) cfg.outputs = std::move(outputs);
    cfg.validate();
    return sweep(cfg);
}

ScenarioResult fig1c(std::span<const std::string> ov)
{
    ScenarioConfig base = base_config(0.01, 1.5, "gg");
    base.time = {20000.0, 4001};
    ScenarioResult out;
    for (const auto& v : apply({variant("nested", base), variant("small", base)}, ov)) {
        Table t = trajectory_table(v.cfg, "fig1c_" + v.label);
        const auto& last = t.rows.back();
        std::string note = v.label + ": at t=" + num(last[0]);
        for (std::size_t k = 1; k < t.columns.size(); ++k) note += " " + t.columns[k] + "=" + num(last[k]);
        out.notes.push_back(note);
        out.tables.push_back(std::move(t));
    }
    return out;
}

ScenarioResult fig1d(std::span<const std::string> ov)
{
    const ScenarioConfig base = base_config(0.01, 1.5, "gg");
    ScenarioResult out;
    for (const auto& v : apply({variant("nested", base), variant("small", base)}, ov)) {
        const SteadyState ss = steady_state(build_model(coupling_set(layout_of(v.cfg)), drive_of(v.cfg)));
        const Matrix& rho = ss.rho.matrix();
        Table t;
        t.name = "fig1d_" + v.label;
        t.columns = {"row", "col", "re", "im"};
        for (Eigen::Index i = 0; i < rho.rows(); ++i)
            for (Eigen::Index j = 0; j < rho.cols(); ++j)
                t.add_row({double(i), double(j), rho(i, j).real(), rho(i, j).imag()});
        out.notes.push_back(v.label + ": concurrence_ss=" + num(concurrence(rho)) +
                            " p_beta=" + num(ss.rho.expectation(bell_singlet())) + " residual=" + num(ss.residual));
        out.tables.push_back(std::move(t));
    }
    return out;
}

ScenarioResult fig2(std::span<const std::string> ov)
{
    const ScenarioConfig base = base_config(0.01, 0.0, "gg");
    const std::vector<std::string> rates = {"rate_e_plus", "rate_e_minus", "rate_plus_g", "rate_minus_g"};
    ScenarioResult out;
    for (const auto& v : apply({variant("nested", base), variant("small", base)}, ov)) {
        const SweepResult r = run_sweep(v.cfg, {axis("geometry.spacing_over_pi", 0.005, 0.995, 199)}, rates, ov);
        out.tables.push_back(sweep_table(r, "fig2_" + v.label,
                                         {{"kdx_over_pi", "kdx_over_pi"},
                                          {"rate_e_plus", "rate_e_plus"},
                                          {"rate_e_minus", "rate_e_minus"},
                                          {"rate_plus_g", "rate_plus_g"},
                                          {"rate_minus_g", "rate_minus_g"}},
                                         v.cfg));
        out.notes.push_back(extremum_note(v.label, r, "rate_minus_g", false));
    }
    return out;
}

ScenarioResult fig3a(std::span<const std::string> ov)
{
    // the grid is delta_12 / Delta_12; only sweep.0.{min,max,points} are read
    ScenarioConfig cfg;
    cfg.sweep = {axis("drive.detuning", -10.0, 10.0, 401)};
    for (const auto& o : ov) apply_override(cfg, o);
    cfg.validate();
    const SweepAxis& a = cfg.sweep.at(0);
    Table t;
    t.name = "fig3a";
    t.columns = {"delta_rel", "omega_plus_over_sqrt2", "omega_minus_over_sqrt2"};
    for (double d : axis_values(a)) {
        const DriveCouplings c = drive_couplings(d, 1.0, 1.0);
        t.add_row({d, c.plus / std::sqrt(2.0), c.minus / std::sqrt(2.0)});
    }
    ScenarioResult out;
    out.notes.push_back("delta_rel grid " + num(a.min) + ".." + num(a.max) + " (" + std::to_string(a.points) +
                        " points), Omega0 = 1");
    out.tables.push_back(std::move(t));
    return out;
}

ScenarioResult steady_concurrence_map(const std::string& name, std::vector<Variant> variants,
                                      std::vector<SweepAxis> axes, std::span<const std::string> ov)
{
    ScenarioResult out;
    for (const auto& v : apply(std::move(variants), ov)) {
        const SweepResult r = run_sweep(v.cfg, axes, {"concurrence_ss"}, ov);
        out.tables.push_back(sweep_table(r, name + "_" + v.label,
                                         {{"omega0", "drive.rabi"},
                                          {"kdx_over_pi", "kdx_over_pi"},
                                          {"concurrence_ss", "concurrence_ss"}},
                                         v.cfg));
        out.notes.push_back(extremum_note(v.label, r, "concurrence_ss", true));
    }
    return out;
}

ScenarioResult fig3b(std::span<const std::string> ov)
{
    const ScenarioConfig base = base_config(0.01, 1.5, "gg");
    return steady_concurrence_map("fig3b", {variant("nested", base), variant("small", base)},
                                  {axis("drive.rabi", 0.1, 4.0, 60)}, ov);
}

ScenarioResult figS2(std::span<const std::string> ov)
{
    const ScenarioConfig base = base_config(0.01, 1.5, "gg");
    return steady_concurrence_map("figS2", {variant("separated", base), variant("braided", base)},
                                  {axis("drive.rabi", 0.1, 4.0, 40), axis("geometry.spacing_over_pi", 0.01, 0.99, 50)},
                                  ov);
}

ScenarioResult fig4a(std::span<const std::string> ov)
{
    const ScenarioConfig base = base_config(0.01, 0.0, "ee");
    ScenarioResult out;
    std::vector<double> maxima;
    for (const auto& v : apply({variant("nested", base), variant("small", base)}, ov)) {
        const SweepResult r = run_sweep(v.cfg, {axis("geometry.spacing_over_pi", 0.005, 0.995, 199)},
                                        {"concurrence_max", "t_concurrence_max"}, ov);
        out.tables.push_back(sweep_table(r, "fig4a_" + v.label,
                                         {{"kdx_over_pi", "kdx_over_pi"}, {"concurrence", "concurrence_max"}}, v.cfg));
        out.notes.push_back(extremum_note(v.label, r, "concurrence_max", true));
        const Extremum e = r.argmax("concurrence_max");
        maxima.push_back(e.found ? e.value : std::nan(""));
    }
    if (maxima.size() == 2) out.notes.push_back("ratio of maxima (first/second) = " + num(maxima[0] / maxima[1]));
    return out;
}

std::vector<Variant> decay_variants()
{
    ScenarioConfig nested = base_config(0.99, 0.0, "ee");
    nested.time = {4000.0, 4001};
    ScenarioConfig small = base_config(0.19, 0.0, "ee");
    small.time = {20.0, 2001};
    return {variant("nested", nested), variant("small", small)};
}

ScenarioResult decay_dynamics(const std::string& name, std::vector<std::string> outputs,
                              std::span<const std::string> ov)
{
    ScenarioResult out;
    for (auto v : apply(decay_variants(), ov)) {
        if (!overrides_key(ov, "outputs=")) v.cfg.outputs = outputs;
        Table t = trajectory_table(v.cfg, name + "_" + v.label);
        const auto peak = peak_concurrence(build_model(coupling_set(layout_of(v.cfg)), drive_of(v.cfg)),
                                           initial_state_of(v.cfg));
        out.notes.push_back(v.label + " (kdx/pi=" + num(v.cfg.geometry.spacing_over_pi) +
                            "): peak concurrence " + num(peak.value) + " at t=" + num(peak.time));
        out.tables.push_back(std::move(t));
    }
    return out;
}

ScenarioResult fig5(std::span<const std::string> ov)
{
    const ScenarioConfig base = base_config(0.01, 1.5, "gg");
    ScenarioResult out;
    const auto variants = apply({variant("nested", base), variant("small", base)}, ov);

    // shared detuning axis: +-2 Delta_12 of the nested geometry at the configured spacing
    ScenarioConfig nested = variants.front().cfg;
    nested.geometry.kind = "nested";
    const double d12 = std::abs(coupling_set(layout_of(nested)).exchange(0, 1));
    const SweepAxis default_axis = axis("drive.detuning", -2.0 * d12, 2.0 * d12, 81);

    for (const auto& v : variants) {
        const SweepResult r =
            run_sweep(v.cfg, {default_axis}, {"g2_zero", "mandel_q", "p_beta", "concurrence_ss"}, ov);
        out.tables.push_back(sweep_table(r, "fig5_" + v.label,
                                         {{"detuning_over_gamma", "detuning_over_gamma"},
                                          {"g2_zero", "g2_zero"},
                                          {"mandel_q", "mandel_q"},
                                          {"p_beta", "p_beta"},
                                          {"concurrence", "concurrence_ss"}},
                                         v.cfg));
        out.notes.push_back(extremum_note(v.label, r, "g2_zero", true));
        out.notes.push_back(extremum_note(v.label, r, "mandel_q", true));
        out.notes.push_back(extremum_note(v.label, r, "mandel_q", false));
    }
    return out;
}

ScenarioResult custom(std::span<const std::string> ov, const ScenarioConfig* base)
{
    ScenarioConfig cfg = base ? *base : ScenarioConfig{};
    for (const auto& o : ov) apply_override(cfg, o);
    cfg.validate();
    ScenarioResult out;
    if (cfg.sweep.empty()) {
        out.tables.push_back(trajectory_table(cfg, "custom"));
        return out;
    }
    const SweepResult r = sweep(cfg);
    out.tables.push_back(r.to_table("custom"));
    for (const auto& o : r.observables) out.notes.push_back(extremum_note("custom", r, o, true));
    return out;
}

template <class E>
[[noreturn]] void rethrow_with_context(const E& e, std::string_view name)
{
    throw E("scenario " + std::string(name) + ": " + e.what());
}

} // namespace

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names = {"fig1c", "fig1d", "fig2",  "fig3a", "fig3b", "fig4a",
                                                   "fig4b", "fig5",  "figS2", "figS3", "custom"};
    return names;
}

ScenarioResult run_scenario(std::string_view name, std::span<const std::string> overrides,
                            const ScenarioConfig* base)
{
    ScenarioResult out;
    try {
        if (name == "fig1c") out = fig1c(overrides);
        else if (name == "fig1d") out = fig1d(overrides);
        else if (name == "fig2") out = fig2(overrides);
        else if (name == "fig3a") out = fig3a(overrides);
        else if (name == "fig3b") out = fig3b(overrides);
        else if (name == "fig4a") out = fig4a(overrides);
        else if (name == "fig4b") out = decay_dynamics("fig4b", {"concurrence"}, overrides);
        else if (name == "fig5") out = fig5(overrides);
        else if (name == "figS2") out = figS2(overrides);
        else if (name == "figS3") out = decay_dynamics("figS3", {"p_psi_plus", "p_psi_minus"}, overrides);
        else if (name == "custom") out = custom(overrides, base);
        else throw ConfigError("unknown scenario '" + std::string(name) + "'");
    } catch (const DegeneracyError& e) {
        rethrow_with_context(e, name);
    } catch (const DarkStateError& e) {
        rethrow_with_context(e, name);
    } catch (const IntegratorError& e) {
        rethrow_with_context(e, name);
    } catch (const PhysicsError& e) {
        rethrow_with_context(e, name);
    }
    out.name = std::string(name);
    return out;
}

} // namespace wqed::runner
