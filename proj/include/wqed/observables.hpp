// observables.hpp: entanglement and emitted-photon statistics

#pragma once

#include <span>
#include <vector>

#include "wqed/layout.hpp"
#include "wqed/liouvillian.hpp"

namespace wqed {

enum class Direction { left, right };

/// Emitted field E = sum_n f_n sigma_n^-, with
/// f_n = (1/K_n) sum_j sqrt(gamma_j / mean_gamma_n) exp(-+ i theta_j)  (- for left-moving).
struct FieldAmplitudes {
    Vector coefficients;
    Direction direction = Direction::left;
};

FieldAmplitudes field_amplitudes(const AtomLayout& layout, Direction direction = Direction::left);

/// E as a matrix in the product basis.
Matrix field_operator(const FieldAmplitudes& fields);

/// <E^dagger E>, clipped at 0.
double intensity(const Matrix& rho, const FieldAmplitudes& fields);

/// <E^dag E^dag E E> / I^2. Throws DarkStateError when I <= 1e-30 * sum |f_n|^2.
double g2_zero(const Matrix& rho, const FieldAmplitudes& fields);

struct CorrelationCurve {
    std::vector<double> taus;
    std::vector<double> g2;
};

/// Quantum regression: G2(tau) = tr[E^dag E exp(L tau)(E rho_ss E^dag)] / I^2.
CorrelationCurve g2_tau(const LindbladModel& model, const Matrix& rho_ss, const FieldAmplitudes& fields,
                        std::span<const double> taus);

/// Q = I (g2(0) - 1).
double mandel_q(const Matrix& rho, const FieldAmplitudes& fields);

/// Hill-Wootters concurrence of a two-qubit state.
double concurrence(const Matrix& rho);

struct ConcurrencePeak {
    double value = 0.0;
    double time = 0.0;
    Matrix rho;  // state at `time`
};

/// max_t C(rho(t)) for a two-atom trajectory. Scans a log-spaced grid from 1e-3 / |fastest rate|
/// to `t_max` (0 = 40 / slowest nonzero rate), then refines the best bracket by golden section.
ConcurrencePeak peak_concurrence(const LindbladModel& model, const DensityMatrix& rho0, double t_max = 0.0,
                                 int grid_points = 2000);

} // namespace wqed
