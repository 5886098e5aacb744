// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "wqed/evolve.hpp"
#include "wqed/layout.hpp"
#include "wqed/liouvillian.hpp"
#include "wqed/observables.hpp"
#include "wqed/slh.hpp"
#include "wqed/spectral.hpp"

using namespace wqed;
using testing::max_abs;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> info;

    void require(bool ok, const std::string& what)
    {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [FAIL]");
    }
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

DriveSpec drive(double rabi, double detuning = 0.0)
{
    DriveSpec d;
    d.rabi = rabi;
    d.detuning = detuning;
    return d;
}

LindbladModel model_for(Geometry g, double theta, const DriveSpec& d = {})
{
    return build_model(coupling_set(make_layout(g, theta)), d);
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = n == 1 ? a : a + (b - a) * k / (n - 1);
    return v;
}

const double kNested = 0.01 * kPi;

Outcome ac1()
{
    Outcome o;
    const auto nested = steady_state(model_for(Geometry::nested, kNested, drive(1.5)));
    const double c = concurrence(nested.rho.matrix());
    const double pb = nested.rho.expectation(bell_singlet());
    o.require(c >= 0.95, "nested C=" + fmt("%.6f", c));
    o.require(pb >= 0.95, "p_beta=" + fmt("%.6f", pb));
    const auto small = steady_state(model_for(Geometry::small, kNested, drive(1.5)));
    const double cs = concurrence(small.rho.matrix());
    o.require(cs <= 1e-6, "small C=" + fmt("%.2e", cs));
    return o;
}

Outcome ac2()
{
    Outcome o;
    const auto rabis = linspace(0.1, 4.0, 60);
    double best = -1.0;
    double at = 0.0;
    double small_best = 0.0;
    for (double r : rabis) {
        const double c = concurrence(steady_state(model_for(Geometry::nested, kNested, drive(r))).rho.matrix());
        if (c > best) best = c, at = r;
        small_best = std::max(small_best,
                               concurrence(steady_state(model_for(Geometry::small, kNested, drive(r))).rho.matrix()));
    }
    o.require(best >= 0.99, "nested max C=" + fmt("%.6f", best));
    o.require(at >= 1.5 && at <= 2.5, "argmax Omega0=" + fmt("%.4f", at));
    o.require(small_best < 0.1, "small max C=" + fmt("%.4f", small_best));
    return o;
}

Outcome ac3()
{
    Outcome o;
    double diff = 0.0;
    double sums = 0.0;
    double small_eq = 0.0;
    for (auto g : {Geometry::nested, Geometry::braided, Geometry::separated, Geometry::small}) {
        for (int k = 1; k <= 100; ++k) {
            const auto cs = coupling_set(make_layout(g, kPi * k / 101.0));
            const auto r = transition_rates(cs);
            const auto m = build_model(cs, DriveSpec{});
            const auto dp = dressed_states(cs);
            const Vector ee = basis_ket(2, 3);
            const Vector gg = basis_ket(2, 0);
            diff = std::max({diff, std::abs(extract_rate(m, ee, dp.ket_plus()) - r.e_plus),
                             std::abs(extract_rate(m, ee, dp.ket_minus()) - r.e_minus),
                             std::abs(extract_rate(m, dp.ket_plus(), gg) - r.plus_g),
                             std::abs(extract_rate(m, dp.ket_minus(), gg) - r.minus_g)});
            const double total = cs.decay(0, 0) + cs.decay(1, 1);
            sums = std::max({sums, std::abs(r.e_plus + r.e_minus - total), std::abs(r.plus_g + r.minus_g - total)});
            if (g == Geometry::small)
                small_eq = std::max({small_eq, std::abs(r.e_plus - r.plus_g), std::abs(r.e_minus - r.minus_g)});
        }
    }
    o.require(diff < 1e-10, "closed form vs extraction " + fmt("%.2e", diff));
    o.require(sums < 1e-10, "sum rules " + fmt("%.2e", sums));
    o.require(small_eq < 1e-10, "small-atom equalities " + fmt("%.2e", small_eq));
    return o;
}

Outcome ac4()
{
    Outcome o;
    double worst = 0.0;
    for (auto g : {Geometry::nested, Geometry::braided, Geometry::separated}) {
        for (int k = 1; k <= 100; ++k) {
            const auto layout = make_layout(g, kPi * k / 101.0);
            worst = std::max(worst, slh_deviation(layout, DriveSpec{}));
            worst = std::max(worst, slh_deviation(layout, drive(1.5)));
        }
    }
    o.require(worst < 1e-10, "max |L_slh - L| = " + fmt("%.2e", worst));
    return o;
}

Outcome ac5()
{
    Outcome o;
    const double x = 1e-3;
    const double ratio = dressed_states(coupling_set(make_layout(Geometry::nested, x))).splitting / x;
    const double rel = std::abs(ratio / (2 * std::sqrt(10.0)) - 1.0);
    o.require(rel < 1e-3, "splitting/(k dx)=" + fmt("%.6f", ratio) + " rel " + fmt("%.2e", rel));
    double d12 = 0.0;
    for (auto g : {Geometry::braided, Geometry::separated})
        for (int k = 0; k <= 200; ++k)
            d12 = std::max(d12, std::abs(coupling_set(make_layout(g, 2 * kPi * k / 200.0)).lamb_shift_difference()));
    o.require(d12 == 0.0, "braided/separated delta12 max " + fmt("%.1e", d12));
    double dc = 0.0;
    double swapped = 0.0;
    for (double ex : {0.3, 1.1, 2.0}) {
        for (double rabi : {0.5, 1.5}) {
            const auto c = drive_couplings(0.0, ex, rabi);
            dc = std::max({dc, std::abs(c.minus), std::abs(c.plus - std::sqrt(2.0) * rabi)});
            const auto n = drive_couplings(0.0, -ex, rabi);
            swapped = std::max({swapped, std::abs(n.plus), std::abs(std::abs(n.minus) - std::sqrt(2.0) * rabi)});
        }
    }
    o.require(dc < 1e-15, "Omega_-=0, Omega_+=sqrt2 Omega0 (Delta12>0) dev " + fmt("%.1e", dc));
    o.info.push_back("Delta12<0 swaps the labels: Omega_+=0, |Omega_-|=sqrt2 Omega0 dev " + fmt("%.1e", swapped));
    return o;
}

Outcome ac6()
{
    Outcome o;
    const auto layout_n = make_layout(Geometry::nested, kNested);
    const auto layout_s = make_layout(Geometry::small, kNested);
    const double d12 = coupling_set(layout_n).exchange(0, 1);
    const auto fn = field_amplitudes(layout_n);
    const auto fs = field_amplitudes(layout_s);
    double g2max = -1.0;
    double at = 0.0;
    Matrix rho_at;
    double identity = 0.0;
    double small_q = -1e300;
    for (double dp : linspace(-2 * std::abs(d12), 2 * std::abs(d12), 81)) {
        const Matrix rho = steady_state(build_model(coupling_set(layout_n), drive(1.5, dp))).rho.matrix();
        const double g2 = g2_zero(rho, fn);
        const double i = intensity(rho, fn);
        const double oracle = 4.0 * rho(3, 3).real() * std::norm(fn.coefficients(0) * fn.coefficients(1)) / (i * i);
        identity = std::max(identity, std::abs(g2 - oracle) / std::max(1.0, oracle));
        if (g2 > g2max) g2max = g2, at = dp, rho_at = rho;
        const Matrix rs = steady_state(build_model(coupling_set(layout_s), drive(1.5, dp))).rho.matrix();
        small_q = std::max(small_q, mandel_q(rs, fs));
    }
    const double ree = rho_at(3, 3).real();
    const double sum = (rho_at(1, 1) + rho_at(2, 2) + 2.0 * rho_at(1, 2)).real();
    o.require(g2max >= 180 && g2max <= 320, "max g2=" + fmt("%.1f", g2max) + " at dp=" + fmt("%.5f", at));
    o.require(identity < 1e-10, "g2 identity " + fmt("%.1e", identity));
    o.require(std::abs(ree / 0.15e-4 - 1.0) <= 0.5, "rho_ee at argmax=" + fmt("%.3e", ree));
    o.require(std::abs(sum / 4.59e-4 - 1.0) <= 0.25, "single-excitation sum at argmax=" + fmt("%.3e", sum));
    o.require(small_q < 0.0, "small max Q=" + fmt("%.4f", small_q));

    const Matrix r0 = steady_state(model_for(Geometry::nested, kNested, drive(1.5))).rho.matrix();
    o.info.push_back("at dp=0 g2=" + fmt("%.1f", g2_zero(r0, fn)) + " rho_ee=" + fmt("%.3e", r0(3, 3).real()) +
                     " single-excitation sum=" + fmt("%.3e", (r0(1, 1) + r0(2, 2) + 2.0 * r0(1, 2)).real()));
    return o;
}

Outcome ac7()
{
    Outcome o;
    const auto ee = DensityMatrix::pure(basis_ket(2, 3));
    const auto cs = coupling_set(make_layout(Geometry::nested, 0.99 * kPi));
    const auto nested = peak_concurrence(build_model(cs, DriveSpec{}), ee);
    double small_best = -1.0;
    double small_at = 0.0;
    for (double x : linspace(0.005, 0.995, 199)) {
        const double c = peak_concurrence(model_for(Geometry::small, x * kPi), ee).value;
        if (c > small_best) small_best = c, small_at = x;
    }
    const double ratio = nested.value / small_best;
    o.require(ratio >= 5.0, "ratio=" + fmt("%.2f", ratio) + " (nested " + fmt("%.4f", nested.value) + ", small " +
                                fmt("%.4f", small_best) + ")");
    o.require(std::abs(small_at - 0.19) <= 0.03, "small argmax=" + fmt("%.3f", small_at) + " pi");
    const auto pops = decompose(nested.rho, dressed_states(cs));
    o.require(pops.minus > pops.plus,
              "p_minus=" + fmt("%.4f", pops.minus) + " p_plus=" + fmt("%.4f", pops.plus) + " at t=" +
                  fmt("%.1f", nested.time));
    return o;
}

Outcome ac8()
{
    Outcome o;
    double drift = 0.0;
    double semigroup = 0.0;
    double residual = 0.0;
    for (auto g : {Geometry::nested, Geometry::braided, Geometry::separated, Geometry::small}) {
        const auto m = model_for(g, 0.3, drive(1.5, 0.1));
        const auto traj = propagate(m, DensityMatrix(testing::random_density(4)), linspace(0.0, 100.0, 1001));
        for (const auto& s : traj.states) drift = std::max(drift, std::abs(s.matrix().trace() - 1.0));
        const Propagator p(m);
        const Matrix rho = testing::random_density(4);
        semigroup = std::max(semigroup, max_abs(p.evolve(p.evolve(rho, 1.3), 2.9) - p.evolve(rho, 4.2)));
        residual = std::max(residual, steady_state(m).residual);
    }
    o.require(drift < 1e-9, "trace drift " + fmt("%.1e", drift));
    o.require(semigroup < 1e-9, "semigroup " + fmt("%.1e", semigroup));
    o.require(residual < 1e-10, "steady residual " + fmt("%.1e", residual));

    const auto m = model_for(Geometry::nested, kNested, drive(1.5));
    const auto ss = steady_state(m);
    const double gap = slowest_decay_rate(liouvillian_spectrum(superoperator(m)));
    const std::vector<double> taus = {60.0 / gap};
    const double tail =
        std::abs(g2_tau(m, ss.rho.matrix(), field_amplitudes(make_layout(Geometry::nested, kNested)), taus).g2[0] -
                 1.0);
    o.require(tail < 1e-3, "|g2(tau)-1| " + fmt("%.1e", tail));

    double lu = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Matrix rho = testing::random_density(4);
        const Matrix u = testing::kron(testing::random_unitary(2), testing::random_unitary(2));
        lu = std::max(lu, std::abs(concurrence(rho) - concurrence(u * rho * u.adjoint())));
    }
    o.require(lu < 1e-9, "concurrence LU invariance " + fmt("%.1e", lu));

    double psd = 0.0;
    double det = 0.0;
    for (auto g : {Geometry::nested, Geometry::braided, Geometry::separated, Geometry::small}) {
        for (int k = 0; k <= 1000; ++k) {
            const auto cs = coupling_set(make_layout(g, 2 * kPi * k / 1000.0));
            Eigen::SelfAdjointEigenSolver<RealMatrix> es(cs.decay);
            psd = std::max(psd, -es.eigenvalues().minCoeff());
            if (g == Geometry::nested) det = std::max(det, std::abs(cs.decay.determinant()));
        }
    }
    o.require(psd < 1e-10, "Gamma PSD violation " + fmt("%.1e", psd));
    o.require(det < 1e-10, "nested det Gamma " + fmt("%.1e", det));

    const auto life = lifetime_report(coupling_set(make_layout(Geometry::nested, kNested)), drive(1.5));
    o.require(life.undriven_slowest > 100.0, "undriven slowest lifetime " + fmt("%.1f", life.undriven_slowest));
    o.info.push_back("lifetimes 1/Gamma_-g=" + fmt("%.3f", life.rate_minus_g) + " undriven=" +
                     fmt("%.1f", life.undriven_slowest) + " driven=" + fmt("%.1f", life.driven_slowest));
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        const char* id;
        double budget;  // seconds
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {{"AC1", 1.0, ac1},  {"AC2", 10.0, ac2}, {"AC3", 5.0, ac3},
                                             {"AC4", 30.0, ac4}, {"AC5", 1e9, ac5},  {"AC6", 10.0, ac6},
                                             {"AC7", 20.0, ac7}, {"AC8", 1e9, ac8}};
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget < 1e9) o.require(secs < c.budget, "runtime " + fmt("%.2f", secs) + " s");
        else o.detail += "; runtime " + fmt("%.2f", secs) + " s";
        std::printf("%s %s  %s\n", c.id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        for (const auto& line : o.info) std::printf("    info: %s\n", line.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
