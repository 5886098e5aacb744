#include "wqed/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "wqed/evolve.hpp"
#include "wqed/spectral.hpp"

namespace wqed {

namespace {

constexpr double kDarkIntensity = 1e-30;

double field_scale(const FieldAmplitudes& f)
{
    return f.coefficients.squaredNorm();
}

void check_dims(const Matrix& rho, const FieldAmplitudes& f)
{
    const Eigen::Index dim = Eigen::Index{1} << f.coefficients.size();
    if (rho.rows() != dim || rho.cols() != dim)
        throw InputError("density matrix dimension does not match the number of field amplitudes");
}

double checked_intensity(const Matrix& rho, const FieldAmplitudes& f)
{
    const double i = intensity(rho, f);
    if (!(i > kDarkIntensity * field_scale(f)))
        throw DarkStateError("emitted intensity vanishes (dark state); g2 is undefined");
    return i;
}

} // namespace

FieldAmplitudes field_amplitudes(const AtomLayout& layout, Direction direction)
{
    const double sign = direction == Direction::left ? -1.0 : 1.0;
    FieldAmplitudes f;
    f.direction = direction;
    f.coefficients = Vector::Zero(static_cast<Eigen::Index>(layout.size()));
    for (std::size_t n = 0; n < layout.size(); ++n) {
        const auto& a = layout.atom(n);
        const double k = static_cast<double>(a.point_rates.size());
        const double mean_rate = std::accumulate(a.point_rates.begin(), a.point_rates.end(), 0.0) / k;
        cplx sum = 0.0;
        for (std::size_t j = 0; j < a.connection_phases.size(); ++j)
            sum += std::sqrt(a.point_rates[j] / mean_rate) * std::polar(1.0, sign * a.connection_phases[j]);
        f.coefficients(static_cast<Eigen::Index>(n)) = sum / k;
    }
    return f;
}

Matrix field_operator(const FieldAmplitudes& fields)
{
    const auto s = lowering_operators(static_cast<int>(fields.coefficients.size()));
    Matrix e = Matrix::Zero(s[0].rows(), s[0].cols());
    for (std::size_t n = 0; n < s.size(); ++n)
        e += fields.coefficients(static_cast<Eigen::Index>(n)) * s[n];
    return e;
}

double intensity(const Matrix& rho, const FieldAmplitudes& fields)
{
    check_dims(rho, fields);
    const Matrix e = field_operator(fields);
    const double i = (e.adjoint() * e * rho).trace().real();
    return std::max(0.0, i);
}

double g2_zero(const Matrix& rho, const FieldAmplitudes& fields)
{
    check_dims(rho, fields);
    const double i = checked_intensity(rho, fields);
    const Matrix e = field_operator(fields);
    const Matrix ee = e * e;
    const double num = (ee.adjoint() * ee * rho).trace().real();
    return std::max(0.0, num) / (i * i);
}

CorrelationCurve g2_tau(const LindbladModel& model, const Matrix& rho_ss, const FieldAmplitudes& fields,
                        std::span<const double> taus)
{
    check_dims(rho_ss, fields);
    const double i = checked_intensity(rho_ss, fields);
    const Matrix e = field_operator(fields);
    const Matrix n_op = e.adjoint() * e;
    const Matrix seed = e * rho_ss * e.adjoint();

    const Propagator prop(model);
    CorrelationCurve c;
    c.taus.assign(taus.begin(), taus.end());
    c.g2.reserve(taus.size());
    for (double tau : taus) {
        if (!(tau >= 0.0) || !std::isfinite(tau))
            throw InputError("correlation delays must be finite and non-negative");
        const Matrix evolved = prop.evolve(seed, tau);
        c.g2.push_back(std::max(0.0, (n_op * evolved).trace().real()) / (i * i));
    }
    return c;
}

double mandel_q(const Matrix& rho, const FieldAmplitudes& fields)
{
    const double g2 = g2_zero(rho, fields);
    return intensity(rho, fields) * (g2 - 1.0);
}

double concurrence(const Matrix& rho)
{
    if (rho.rows() != 4 || rho.cols() != 4)
        throw InputError("concurrence is defined for two qubits (4x4 density matrix)");
    Matrix yy = Matrix::Zero(4, 4);
    // sigma_y kron sigma_y: anti-diagonal (-1, 1, 1, -1)
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix flipped = yy * rho.conjugate() * yy;
    const Matrix r = rho * flipped;

    Eigen::ComplexEigenSolver<Matrix> es(r, false);
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k) {
        // rho * flipped has a non-negative spectrum; rounding can push zeros slightly negative
        const double re = es.eigenvalues()(k).real();
        lam[static_cast<std::size_t>(k)] = std::sqrt(std::max(re, 0.0));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

ConcurrencePeak peak_concurrence(const LindbladModel& model, const DensityMatrix& rho0, double t_max,
                                 int grid_points)
{
    if (model.dim() != 4)
        throw InputError("peak concurrence needs a two-atom model");
    if (grid_points < 3)
        throw InputError("peak concurrence needs at least 3 grid points");
    const ModalPropagator prop(model, rho0);
    const Vector& spectrum = prop.rates();
    const double fastest = std::max(1e-12, -spectrum(spectrum.size() - 1).real());
    if (!(t_max > 0.0)) {
        const double slowest = slowest_decay_rate(spectrum);
        t_max = slowest > 0.0 ? 40.0 / slowest : 1e6 / fastest;
    }
    const double t_min = std::min(1e-3 / fastest, 1e-3 * t_max);

    auto c_at = [&](double t) { return concurrence(prop.at(t)); };
    std::vector<double> ts(static_cast<std::size_t>(grid_points));
    ts[0] = 0.0;
    const double ratio = std::log(t_max / t_min);
    for (int k = 1; k < grid_points; ++k)
        ts[static_cast<std::size_t>(k)] = t_min * std::exp(ratio * (k - 1) / (grid_points - 2));

    std::size_t best = 0;
    double best_c = -1.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double c = c_at(ts[k]);
        if (c > best_c) {
            best_c = c;
            best = k;
        }
    }

    ConcurrencePeak peak;
    if (best_c > 0.0 && best > 0 && best + 1 < ts.size()) {
        double a = ts[best - 1];
        double b = ts[best + 1];
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - g * (b - a);
        double x2 = a + g * (b - a);
        double f1 = c_at(x1);
        double f2 = c_at(x2);
        for (int it = 0; it < 80 && (b - a) > 1e-12 * b; ++it) {
            if (f1 > f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = c_at(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = c_at(x2);
            }
        }
        const double t_ref = f1 > f2 ? x1 : x2;
        const double c_ref = std::max(f1, f2);
        if (c_ref > best_c) {
            best_c = c_ref;
            peak.time = t_ref;
        } else {
            peak.time = ts[best];
        }
    } else {
        peak.time = ts[best];
    }
    peak.value = std::max(0.0, best_c);
    peak.rho = prop.at(peak.time);
    return peak;
}

} // namespace wqed
