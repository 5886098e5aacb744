// wqed: command-line front end for scenarios, sweeps, rate tables, SLH checks and steady states

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wqed/evolve.hpp"
#include "wqed/observables.hpp"
#include "wqed/runner/config.hpp"
#include "wqed/runner/csv.hpp"
#include "wqed/runner/scenario.hpp"
#include "wqed/runner/sweep.hpp"
#include "wqed/slh.hpp"
#include "wqed/spectral.hpp"

namespace {

using namespace wqed;
using namespace wqed::runner;

enum ExitCode { kOk = 0, kConfig = 2, kPhysics = 3, kIo = 4 };

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void report_written(const std::vector<std::filesystem::path>& paths)
{
    for (const auto& p : paths) std::cout << "wrote " << p.string() << "\n";
}

int cmd_scenario(const std::string& name, const std::vector<std::string>& sets, const std::string& out,
                 const std::string& config)
{
    ScenarioConfig base;
    if (!config.empty()) base = load_config(config);
    const ScenarioResult r = run_scenario(name, sets, config.empty() ? nullptr : &base);
    for (const auto& n : r.notes) std::cout << n << "\n";
    report_written(write_tables(r.tables, out));
    return kOk;
}

int cmd_sweep(const std::string& path, const std::string& out)
{
    const ScenarioConfig cfg = load_config(path);
    const SweepResult r = sweep(cfg);
    std::cout << r.size() << " point(s), " << r.failures() << " failed\n";
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!r.errors[i].empty()) std::cout << "point " << i << ": " << r.errors[i] << "\n";
    for (const auto& o : r.observables) {
        for (bool maximum : {true, false}) {
            const Extremum e = maximum ? r.argmax(o) : r.argmin(o);
            std::cout << (maximum ? "argmax " : "argmin ") << o << ": ";
            if (!e.found) {
                std::cout << "undefined\n";
                continue;
            }
            std::cout << fmt(e.value) << " at";
            for (std::size_t a = 0; a < r.axes.size(); ++a)
                std::cout << " " << r.axes[a].parameter << "=" << fmt(e.at[a]) << " (grid step "
                          << fmt(e.resolution[a]) << ")";
            std::cout << "\n";
        }
    }
    report_written(write_tables({r.to_table("sweep")}, out));
    return kOk;
}

int cmd_rates(const std::string& geometry, double spacing_over_pi, double gamma0)
{
    const CouplingSet cs = coupling_set(make_layout(geometry, spacing_over_pi * kPi, gamma0));
    std::cout << "lamb_shift " << fmt(cs.lamb_shift(0)) << " " << fmt(cs.lamb_shift(1)) << "\n"
              << "lamb_shift_difference " << fmt(cs.lamb_shift_difference()) << "\n"
              << "exchange12 " << fmt(cs.exchange(0, 1)) << "\n"
              << "decay " << fmt(cs.decay(0, 0)) << " " << fmt(cs.decay(1, 1)) << " " << fmt(cs.decay(0, 1)) << "\n";
    const RateQuartet q = transition_rates(cs);
    std::cout << "splitting " << fmt(q.splitting) << "\n"
              << "rate_e_plus " << fmt(q.e_plus) << "\n"
              << "rate_e_minus " << fmt(q.e_minus) << "\n"
              << "rate_plus_g " << fmt(q.plus_g) << "\n"
              << "rate_minus_g " << fmt(q.minus_g) << "\n";
    const LifetimeReport l = lifetime_report(cs, DriveSpec{});
    std::cout << "lifetime_minus_g " << fmt(l.rate_minus_g) << "\n"
              << "lifetime_undriven_slowest " << fmt(l.undriven_slowest) << "\n";
    return kOk;
}

int cmd_slh_check(const std::string& geometry, int grid, double rabi, double tol)
{
    if (grid < 1) throw ConfigError("--grid must be at least 1");
    double worst = 0.0;
    for (int k = 0; k < grid; ++k) {
        const double theta = kPi * (k + 1) / (grid + 1);
        const AtomLayout layout = make_layout(geometry, theta);
        for (double r : {0.0, rabi}) {
            DriveSpec d;
            d.rabi = r;
            d.detuning = 0.3 * r;
            worst = std::max(worst, slh_deviation(layout, d));
        }
    }
    const bool ok = worst <= tol;
    std::cout << geometry << ": max |L_slh - L_closed| = " << fmt(worst) << " over " << grid
              << " spacings (tolerance " << fmt(tol) << ") " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kPhysics;
}

int cmd_steady(const std::string& path)
{
    const ScenarioConfig cfg = load_config(path);
    const AtomLayout layout = layout_of(cfg);
    const SteadyState ss = steady_state(build_model(coupling_set(layout), drive_of(cfg)));
    const Matrix& rho = ss.rho.matrix();
    std::cout << "residual " << fmt(ss.residual) << "\n"
              << "uniqueness_margin " << fmt(ss.uniqueness_margin) << "\n";
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        std::cout << "rho[" << i << "]";
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
            std::cout << " " << fmt(rho(i, j).real()) << (rho(i, j).imag() < 0 ? "-" : "+")
                      << fmt(std::abs(rho(i, j).imag())) << "i";
        std::cout << "\n";
    }
    if (rho.rows() == 4) {
        std::cout << "concurrence " << fmt(concurrence(rho)) << "\n"
                  << "p_beta " << fmt(ss.rho.expectation(bell_singlet())) << "\n";
    }
    const FieldAmplitudes f = field_amplitudes(layout);
    std::cout << "intensity " << fmt(intensity(rho, f)) << "\n";
    try {
        std::cout << "g2_zero " << fmt(g2_zero(rho, f)) << "\n"
                  << "mandel_q " << fmt(mandel_q(rho, f)) << "\n";
    } catch (const DarkStateError& e) {
        std::cout << "g2_zero undefined (" << e.what() << ")\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Giant-atom waveguide QED simulator"};
    app.require_subcommand(1);

    std::string scenario_name, out_dir = "out", config_path;
    std::vector<std::string> sets;
    auto* scenario = app.add_subcommand("scenario", "Reproduce a named figure scenario (or 'custom')");
    scenario->add_option("name", scenario_name, "Scenario name")
        ->required()
        ->check(CLI::IsMember(scenario_names()));
    scenario->add_option("--set", sets, "Override key=value (repeatable)");
    scenario->add_option("--out", out_dir, "Output directory")->capture_default_str();
    scenario->add_option("--config", config_path, "Base JSON config for the custom scenario");

    std::string sweep_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run the sweep described by a JSON config");
    sweep_cmd->add_option("config", sweep_path, "Config file")->required();
    sweep_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

    std::string geometry = "nested";
    double spacing = 0.01, gamma0 = 1.0;
    auto* rates = app.add_subcommand("rates", "Print couplings, collective rates and lifetimes");
    rates->add_option("--geometry", geometry, "nested|braided|separated|small")->capture_default_str();
    rates->add_option("--spacing-over-pi", spacing, "kappa*dx / pi")->capture_default_str();
    rates->add_option("--gamma0", gamma0, "Single-point decay rate")->capture_default_str();

    int grid = 100;
    double rabi = 1.5, tol = 1e-10;
    auto* slh = app.add_subcommand("slh-check", "Compare SLH-composed and closed-form Liouvillians");
    slh->add_option("--geometry", geometry, "nested|braided|separated|small")->capture_default_str();
    slh->add_option("--grid", grid, "Number of spacings in (0, pi)")->capture_default_str();
    slh->add_option("--rabi", rabi, "Rabi frequency for the driven pass")->capture_default_str();
    slh->add_option("--tol", tol, "Pass threshold")->capture_default_str();

    std::string steady_path;
    auto* steady = app.add_subcommand("steady", "Steady state of a JSON config");
    steady->add_option("config", steady_path, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*scenario) return cmd_scenario(scenario_name, sets, out_dir, config_path);
        if (*sweep_cmd) return cmd_sweep(sweep_path, out_dir);
        if (*rates) return cmd_rates(geometry, spacing, gamma0);
        if (*slh) return cmd_slh_check(geometry, grid, rabi, tol);
        if (*steady) return cmd_steady(steady_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kConfig;
    } catch (const PhysicsError& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return kPhysics;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
