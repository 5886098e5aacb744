#include "wqed/runner/sweep.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "wqed/evolve.hpp"
#include "wqed/observables.hpp"
#include "wqed/runner/parallel.hpp"
#include "wqed/spectral.hpp"

namespace wqed::runner {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Lazily built quantities shared by the observables of one grid point.
class PointContext {
public:
    explicit PointContext(const ScenarioConfig& cfg) : cfg_(cfg) {}

    const AtomLayout& layout()
    {
        if (!layout_) layout_.emplace(layout_of(cfg_));
        return *layout_;
    }
    const CouplingSet& couplings()
    {
        if (!couplings_) couplings_ = coupling_set(layout());
        return *couplings_;
    }
    const LindbladModel& model()
    {
        if (!model_) model_ = build_model(couplings(), drive_of(cfg_));
        return *model_;
    }
    const SteadyState& steady()
    {
        if (!steady_) steady_.emplace(steady_state(model()));
        return *steady_;
    }
    const Matrix& rho() { return steady().rho.matrix(); }
    const FieldAmplitudes& fields()
    {
        if (!fields_) fields_ = field_amplitudes(layout(), Direction::left);
        return *fields_;
    }
    const RateQuartet& rates()
    {
        if (!rates_) rates_ = transition_rates(couplings());
        return *rates_;
    }
    const DressedPair& dressed()
    {
        if (!dressed_) dressed_ = dressed_states(couplings());
        return *dressed_;
    }
    const ConcurrencePeak& peak()
    {
        if (!peak_) peak_ = peak_concurrence(model(), initial_state_of(cfg_));
        return *peak_;
    }
    const LifetimeReport& lifetimes()
    {
        if (!lifetimes_) lifetimes_ = lifetime_report(couplings(), drive_of(cfg_));
        return *lifetimes_;
    }
    DriveCouplings drive_couplings_now()
    {
        const auto& cs = couplings();
        return drive_couplings(cs.lamb_shift_difference(), cs.exchange(0, 1), cfg_.drive.rabi);
    }
    const ScenarioConfig& config() const { return cfg_; }

private:
    const ScenarioConfig& cfg_;
    std::optional<AtomLayout> layout_;
    std::optional<CouplingSet> couplings_;
    std::optional<LindbladModel> model_;
    std::optional<SteadyState> steady_;
    std::optional<FieldAmplitudes> fields_;
    std::optional<RateQuartet> rates_;
    std::optional<DressedPair> dressed_;
    std::optional<ConcurrencePeak> peak_;
    std::optional<LifetimeReport> lifetimes_;
};

using Evaluator = std::function<double(PointContext&)>;

double pop(const Matrix& rho, Eigen::Index i) { return rho(i, i).real(); }

const std::vector<std::pair<std::string, Evaluator>>& evaluators()
{
    static const std::vector<std::pair<std::string, Evaluator>> table = {
        {"concurrence_ss", [](PointContext& c) { return concurrence(c.rho()); }},
        {"p_gg", [](PointContext& c) { return pop(c.rho(), 0); }},
        {"p_ge", [](PointContext& c) { return pop(c.rho(), 1); }},
        {"p_eg", [](PointContext& c) { return pop(c.rho(), 2); }},
        {"p_ee", [](PointContext& c) { return pop(c.rho(), 3); }},
        {"p_beta", [](PointContext& c) { return c.steady().rho.expectation(bell_singlet()); }},
        {"p_psi_plus", [](PointContext& c) { return c.steady().rho.expectation(c.dressed().ket_plus()); }},
        {"p_psi_minus", [](PointContext& c) { return c.steady().rho.expectation(c.dressed().ket_minus()); }},
        {"coherence_od", [](PointContext& c) { return c.rho()(1, 2).real(); }},
        {"single_excitation_sum",
         [](PointContext& c) { return pop(c.rho(), 1) + pop(c.rho(), 2) + 2.0 * c.rho()(1, 2).real(); }},
        {"intensity", [](PointContext& c) { return intensity(c.rho(), c.fields()); }},
        {"g2_zero", [](PointContext& c) { return g2_zero(c.rho(), c.fields()); }},
        {"mandel_q", [](PointContext& c) { return mandel_q(c.rho(), c.fields()); }},
        {"residual", [](PointContext& c) { return c.steady().residual; }},
        {"rate_e_plus", [](PointContext& c) { return c.rates().e_plus; }},
        {"rate_e_minus", [](PointContext& c) { return c.rates().e_minus; }},
        {"rate_plus_g", [](PointContext& c) { return c.rates().plus_g; }},
        {"rate_minus_g", [](PointContext& c) { return c.rates().minus_g; }},
        {"splitting", [](PointContext& c) { return c.rates().splitting; }},
        {"lamb_shift_difference", [](PointContext& c) { return c.couplings().lamb_shift_difference(); }},
        {"exchange12", [](PointContext& c) { return c.couplings().exchange(0, 1); }},
        {"decay12", [](PointContext& c) { return c.couplings().decay(0, 1); }},
        {"omega_plus", [](PointContext& c) { return c.drive_couplings_now().plus; }},
        {"omega_minus", [](PointContext& c) { return c.drive_couplings_now().minus; }},
        {"concurrence_max", [](PointContext& c) { return c.peak().value; }},
        {"t_concurrence_max", [](PointContext& c) { return c.peak().time; }},
        {"lifetime_minus_g", [](PointContext& c) { return c.lifetimes().rate_minus_g; }},
        {"lifetime_undriven", [](PointContext& c) { return c.lifetimes().undriven_slowest; }},
        {"lifetime_driven", [](PointContext& c) { return c.lifetimes().driven_slowest; }},
    };
    return table;
}

const Evaluator& find_evaluator(const std::string& name)
{
    for (const auto& [n, f] : evaluators())
        if (n == name) return f;
    throw ConfigError("unknown observable '" + name + "'");
}

void append_error(std::string& errors, const std::string& msg)
{
    if (!errors.empty()) errors += "; ";
    errors += msg;
}

Extremum extremum(const SweepResult& r, const std::string& observable, bool maximum)
{
    std::size_t k = r.observables.size();
    for (std::size_t j = 0; j < r.observables.size(); ++j)
        if (r.observables[j] == observable) k = j;
    if (k == r.observables.size()) throw InputError("sweep has no observable '" + observable + "'");

    Extremum e;
    e.observable = observable;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        const double v = r.values[i][k];
        if (std::isnan(v)) continue;
        if (!e.found || (maximum ? v > e.value : v < e.value)) {
            e.found = true;
            e.index = i;
            e.value = v;
        }
    }
    if (e.found) e.at = r.parameters[e.index];
    for (const auto& a : r.axes)
        e.resolution.push_back(a.points > 1 ? (a.max - a.min) / (a.points - 1) : 0.0);
    return e;
}

} // namespace

const std::vector<std::string>& scalar_observables()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [n, f] : evaluators()) out.push_back(n);
        return out;
    }();
    return names;
}

std::vector<std::string> default_sweep_outputs()
{
    return {"concurrence_ss", "p_beta"};
}

std::vector<double> evaluate_point(const ScenarioConfig& cfg, std::span<const std::string> observables,
                                   std::string* errors)
{
    std::vector<const Evaluator*> fs;
    for (const auto& o : observables) fs.push_back(&find_evaluator(o));

    PointContext ctx(cfg);
    std::vector<double> out(observables.size(), kNaN);
    std::string err;
    for (std::size_t k = 0; k < fs.size(); ++k) {
        try {
            out[k] = (*fs[k])(ctx);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            append_error(err, observables[k] + ": " + e.what());
        }
    }
    if (errors) *errors = err;
    return out;
}

std::size_t SweepResult::failures() const
{
    std::size_t n = 0;
    for (const auto& e : errors) n += e.empty() ? 0 : 1;
    return n;
}

std::vector<double> SweepResult::column(const std::string& name) const
{
    std::vector<double> out;
    for (std::size_t a = 0; a < axes.size(); ++a) {
        if (axes[a].parameter != name) continue;
        for (const auto& p : parameters) out.push_back(p[a]);
        return out;
    }
    for (std::size_t k = 0; k < observables.size(); ++k) {
        if (observables[k] != name) continue;
        for (const auto& v : values) out.push_back(v[k]);
        return out;
    }
    throw InputError("sweep has no column '" + name + "'");
}

Extremum SweepResult::argmax(const std::string& observable) const
{
    return extremum(*this, observable, true);
}

Extremum SweepResult::argmin(const std::string& observable) const
{
    return extremum(*this, observable, false);
}

Table SweepResult::to_table(const std::string& name) const
{
    Table t;
    t.name = name;
    for (const auto& a : axes) t.columns.push_back(a.parameter);
    t.columns.insert(t.columns.end(), observables.begin(), observables.end());
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::vector<double> row = parameters[i];
        row.insert(row.end(), values[i].begin(), values[i].end());
        t.add_row(std::move(row));
    }
    return t;
}

std::vector<double> axis_values(const SweepAxis& axis)
{
    if (axis.points < 1) throw ConfigError("sweep axis '" + axis.parameter + "' needs at least one point");
    std::vector<double> v(static_cast<std::size_t>(axis.points));
    if (axis.points == 1) {
        v[0] = axis.min;
        return v;
    }
    const double step = (axis.max - axis.min) / (axis.points - 1);
    for (int k = 0; k < axis.points; ++k) v[static_cast<std::size_t>(k)] = axis.min + step * k;
    v.back() = axis.max;
    return v;
}

SweepResult sweep(const ScenarioConfig& cfg, std::size_t workers)
{
    cfg.validate();
    SweepResult r;
    r.axes = cfg.sweep;
    r.observables = cfg.outputs.empty() ? default_sweep_outputs() : cfg.outputs;
    for (const auto& o : r.observables) find_evaluator(o);

    std::vector<std::vector<double>> grids;
    for (const auto& a : r.axes) grids.push_back(axis_values(a));
    std::size_t total = 1;
    for (const auto& g : grids) total *= g.size();

    r.parameters.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        std::vector<double> p(grids.size());
        for (std::size_t a = grids.size(); a-- > 0;) {
            p[a] = grids[a][rem % grids[a].size()];
            rem /= grids[a].size();
        }
        r.parameters[i] = std::move(p);
    }

    r.values.assign(total, {});
    r.errors.assign(total, {});
    parallel_for(
        total,
        [&](std::size_t i) {
            ScenarioConfig point = cfg;
            point.sweep.clear();
            try {
                for (std::size_t a = 0; a < r.axes.size(); ++a)
                    set_numeric(point, r.axes[a].parameter, r.parameters[i][a]);
                r.values[i] = evaluate_point(point, r.observables, &r.errors[i]);
            } catch (const ConfigError&) {
                throw;
            } catch (const Error& e) {
                r.values[i].assign(r.observables.size(), kNaN);
                r.errors[i] = e.what();
            }
        },
        workers);
    return r;
}

const std::vector<std::string>& trajectory_observables()
{
    static const std::vector<std::string> names = {"p_gg",       "p_ge",        "p_eg",      "p_ee",
                                                   "p_beta",     "concurrence", "p_psi_plus", "p_psi_minus",
                                                   "intensity"};
    return names;
}

Table trajectory_table(const ScenarioConfig& cfg, const std::string& name)
{
    cfg.validate();
    const std::vector<std::string> outputs =
        cfg.outputs.empty() ? std::vector<std::string>{"p_gg", "p_ge", "p_eg", "p_ee", "p_beta", "concurrence"}
                            : cfg.outputs;
    bool needs_dressed = false;
    for (const auto& o : outputs) {
        bool known = false;
        for (const auto& n : trajectory_observables()) known = known || n == o;
        if (!known) throw ConfigError("unknown trajectory observable '" + o + "'");
        needs_dressed = needs_dressed || o == "p_psi_plus" || o == "p_psi_minus";
    }

    const AtomLayout layout = layout_of(cfg);
    const CouplingSet cs = coupling_set(layout);
    const LindbladModel model = build_model(cs, drive_of(cfg));
    std::vector<double> times(static_cast<std::size_t>(cfg.time.samples));
    for (std::size_t k = 0; k < times.size(); ++k)
        times[k] = cfg.time.t_max * static_cast<double>(k) / static_cast<double>(times.size() - 1);
    const Trajectory traj = propagate(model, initial_state_of(cfg), times);

    std::optional<DressedPair> dressed;
    if (needs_dressed) dressed = dressed_states(cs);
    const FieldAmplitudes fields = field_amplitudes(layout, Direction::left);
    const Vector beta = bell_singlet();

    Table t;
    t.name = name;
    t.columns.push_back("t");
    t.columns.insert(t.columns.end(), outputs.begin(), outputs.end());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const DensityMatrix& s = traj.states[k];
        std::vector<double> row{times[k]};
        for (const auto& o : outputs) {
            if (o == "p_gg") row.push_back(s.population(0));
            else if (o == "p_ge") row.push_back(s.population(1));
            else if (o == "p_eg") row.push_back(s.population(2));
            else if (o == "p_ee") row.push_back(s.population(3));
            else if (o == "p_beta") row.push_back(s.expectation(beta));
            else if (o == "concurrence") row.push_back(concurrence(s.matrix()));
            else if (o == "p_psi_plus") row.push_back(s.expectation(dressed->ket_plus()));
            else if (o == "p_psi_minus") row.push_back(s.expectation(dressed->ket_minus()));
            else row.push_back(intensity(s.matrix(), fields));
        }
        t.add_row(std::move(row));
    }
    return t;
}

} // namespace wqed::runner
