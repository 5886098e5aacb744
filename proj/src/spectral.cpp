#include "wqed/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wqed {

namespace {

void require_two_atoms(const CouplingSet& cs)
{
    if (cs.size() != 2)
        throw InputError("dressed-state analysis needs exactly two atoms, got " +
                         std::to_string(cs.size()));
}

struct Shifted {
    double w1, w2, d, exchange, splitting;
};

Shifted shifted_frequencies(const CouplingSet& cs)
{
    require_two_atoms(cs);
    Shifted s{};
    s.w1 = cs.lamb_shift(0) + cs.bare_detuning(0);
    s.w2 = cs.lamb_shift(1) + cs.bare_detuning(1);
    s.d = s.w1 - s.w2;
    s.exchange = cs.exchange(0, 1);
    s.splitting = std::hypot(2.0 * s.exchange, s.d);

    const double scale = std::max({1.0, cs.decay.cwiseAbs().maxCoeff(), std::abs(s.w1), std::abs(s.w2)});
    if (s.splitting <= 1e-13 * scale)
        throw DegeneracyError("dressed states are degenerate (Delta_12 = 0 and equal shifted frequencies); "
                              "any single-excitation basis is valid");
    return s;
}

// (r, 2) / sqrt(r^2 + 4) without overflow for |r| -> inf
Eigen::Vector2d normalized_amplitudes(double r)
{
    if (std::isinf(r)) return {std::copysign(1.0, r), 0.0};
    if (std::abs(r) <= 2.0) {
        const double n = std::sqrt(r * r + 4.0);
        return {r / n, 2.0 / n};
    }
    const double q = 2.0 / std::abs(r);
    const double n = std::sqrt(1.0 + q * q);
    return {std::copysign(1.0, r) / n, q / n};
}

// eta_+- = d +- splitting, using eta_+ eta_- = -4 Delta_12^2 on the cancelling branch
std::pair<double, double> etas(double d, double exchange, double splitting)
{
    if (d >= 0.0) {
        const double ep = d + splitting;
        return {ep, -4.0 * exchange * exchange / ep};
    }
    const double em = d - splitting;
    return {-4.0 * exchange * exchange / em, em};
}

} // namespace

Vector DressedPair::ket_plus() const
{
    Vector v = Vector::Zero(4);
    v(2) = plus(0);
    v(1) = plus(1);
    return v;
}

Vector DressedPair::ket_minus() const
{
    Vector v = Vector::Zero(4);
    v(2) = minus(0);
    v(1) = minus(1);
    return v;
}

DressedPair dressed_states(const CouplingSet& cs)
{
    const Shifted s = shifted_frequencies(cs);
    // Delta_12 == 0 is treated as the limit Delta_12 -> 0+
    const double ex = s.exchange == 0.0 ? 0.0 : s.exchange;
    const auto [eta_p, eta_m] = etas(s.d, ex, s.splitting);

    // r_+- = eta_+- / Delta_12; on the cancelling branch eta/Delta = -4 Delta / eta_other
    double r_plus, r_minus;
    if (s.d >= 0.0) {
        r_plus = eta_p / ex;
        r_minus = -4.0 * ex / eta_p;
    } else {
        r_minus = eta_m / ex;
        r_plus = -4.0 * ex / eta_m;
    }

    DressedPair p;
    p.plus = normalized_amplitudes(r_plus);
    p.minus = normalized_amplitudes(r_minus);
    p.splitting = s.splitting;
    p.energy_ground = 0.0;
    p.energy_excited = s.w1 + s.w2;
    p.energy_plus = 0.5 * (s.w1 + s.w2 + s.splitting);
    p.energy_minus = 0.5 * (s.w1 + s.w2 - s.splitting);
    return p;
}

RateQuartet transition_rates(const CouplingSet& cs)
{
    const Shifted s = shifted_frequencies(cs);
    const auto [eta_p, eta_m] = etas(s.d, s.exchange, s.splitting);
    const double g1 = cs.decay(0, 0);
    const double g2 = cs.decay(1, 1);
    const double xi = 4.0 * s.exchange * cs.decay(0, 1);
    const double denom = 2.0 * s.splitting;

    RateQuartet q;
    q.eta_plus = eta_p;
    q.eta_minus = eta_m;
    q.xi = xi;
    q.splitting = s.splitting;
    q.e_plus = (g2 * eta_p - g1 * eta_m + xi) / denom;
    q.plus_g = (g1 * eta_p - g2 * eta_m + xi) / denom;
    q.e_minus = (g1 * eta_p - g2 * eta_m - xi) / denom;
    q.minus_g = (g2 * eta_p - g1 * eta_m - xi) / denom;
    return q;
}

double extract_rate(const LindbladModel& model, const Vector& from, const Vector& to)
{
    if (from.size() != model.dim() || to.size() != model.dim())
        throw InputError("state dimension does not match the model");
    if (std::abs(from.norm() - 1.0) > 1e-10 || std::abs(to.norm() - 1.0) > 1e-10)
        throw InputError("extract_rate expects normalized states");

    const Matrix n = excitation_number(model.atoms());
    const Matrix& h = model.hamiltonian;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h * n - n * h).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw PhysicsError("rate extraction is only valid for decay dynamics; the model is driven");

    const Matrix out = apply_liouvillian(model, from * from.adjoint());
    return (to.adjoint() * out * to)(0, 0).real();
}

DriveCouplings drive_couplings(double delta12, double exchange12, double rabi)
{
    const double d = delta12;
    const double ex = exchange12;
    const double s = std::hypot(2.0 * ex, d);
    if (s == 0.0)
        throw DegeneracyError("drive couplings undefined: delta_12 = Delta_12 = 0");

    // overall sign sgn(Delta_12) aligns with the dressed-state amplitudes; Delta_12 = 0 -> +
    const double sign_ex = ex < 0.0 ? -1.0 : 1.0;

    auto branch = [&](double sigma) {
        if (sigma * d < 0.0) {
            // d + sigma*s cancels; rewrite through (d + s)(d - s) = -4 Delta^2
            const double far = d + std::copysign(s, d);
            const double num = 1.0 - 2.0 * ex / far;
            const double den = std::sqrt(2.0) * std::sqrt(s / (std::abs(d) + s));
            return num / den;
        }
        const double u = d + sigma * s;
        const double num = u + 2.0 * ex;
        const double den = std::sqrt(8.0 * ex * ex + 2.0 * d * u);
        return sign_ex * num / den;
    };

    return {rabi * branch(+1.0), rabi * branch(-1.0)};
}

Vector liouvillian_spectrum(const Matrix& superop)
{
    Eigen::ComplexEigenSolver<Matrix> es(superop, false);
    if (es.info() != Eigen::Success)
        throw PhysicsError("Liouvillian eigenvalue computation did not converge");
    Vector ev = es.eigenvalues();
    std::vector<cplx> v(ev.data(), ev.data() + ev.size());
    std::stable_sort(v.begin(), v.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double slowest_decay_rate(const Vector& sorted_spectrum, double zero_tol)
{
    if (sorted_spectrum.size() < 2) return std::numeric_limits<double>::infinity();
    double slowest = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 1; k < sorted_spectrum.size(); ++k)
        slowest = std::min(slowest, -sorted_spectrum(k).real());
    return slowest <= zero_tol ? 0.0 : slowest;
}

LifetimeReport lifetime_report(const CouplingSet& cs, const DriveSpec& drive)
{
    LifetimeReport r;
    r.rate_minus_g = 1.0 / transition_rates(cs).minus_g;

    DriveSpec undriven = drive;
    undriven.rabi = 0.0;
    const double g0 = slowest_decay_rate(liouvillian_spectrum(superoperator(build_model(cs, undriven))));
    const double g1 = slowest_decay_rate(liouvillian_spectrum(superoperator(build_model(cs, drive))));
    r.undriven_slowest = 1.0 / g0;
    r.driven_slowest = 1.0 / g1;
    return r;
}

} // namespace wqed
