// spectral.hpp: dressed single-excitation states, transition rates, drive couplings, Liouvillian spectra

#pragma once

#include <array>

#include "wqed/layout.hpp"
#include "wqed/liouvillian.hpp"
#include "wqed/types.hpp"

namespace wqed {

/// Single-excitation eigenpair of two atoms. Amplitudes are over (|eg>, |ge>), real,
/// with signs taken from (d +- splitting)/Delta_12 |eg> + 2|ge> before normalization.
/// Energies are in the frame with the common transition frequency removed.
struct DressedPair {
    Eigen::Vector2d plus;
    Eigen::Vector2d minus;
    double energy_ground = 0.0;
    double energy_plus = 0.0;
    double energy_minus = 0.0;
    double energy_excited = 0.0;
    double splitting = 0.0;  // sqrt(4 Delta_12^2 + (w1 - w2)^2) >= 0

    /// |psi_+> or |psi_-> embedded in the 4-dim product basis.
    Vector ket_plus() const;
    Vector ket_minus() const;
};

/// Throws DegeneracyError when Delta_12 = 0 and the shifted frequencies coincide.
DressedPair dressed_states(const CouplingSet& cs);

/// Four collective transition rates (units of gamma0), plus the intermediate quantities.
struct RateQuartet {
    double e_plus = 0.0;   // |ee> -> |psi_+>
    double e_minus = 0.0;  // |ee> -> |psi_->
    double plus_g = 0.0;   // |psi_+> -> |gg>
    double minus_g = 0.0;  // |psi_-> -> |gg>
    double eta_plus = 0.0;
    double eta_minus = 0.0;
    double xi = 0.0;
    double splitting = 0.0;
};

RateQuartet transition_rates(const CouplingSet& cs);

/// tr( L[|from><from|] |to><to| ). Only defined for undriven (excitation-conserving) models.
double extract_rate(const LindbladModel& model, const Vector& from, const Vector& to);

struct DriveCouplings {
    double plus = 0.0;
    double minus = 0.0;
};

/// Effective couplings |gg> <-> |psi_+->, Omega_+- = Omega0 <psi_+-| (s1^+ + s2^+) |gg>,
/// evaluated in closed form from delta_12 and Delta_12.
DriveCouplings drive_couplings(double delta12, double exchange12, double rabi);

/// Eigenvalues sorted by descending real part.
Vector liouvillian_spectrum(const Matrix& superop);

/// Smallest decay rate after removing the stationary eigenvalue; 0 when a second zero mode exists.
double slowest_decay_rate(const Vector& sorted_spectrum, double zero_tol = 1e-10);

/// Candidate lifetimes (units of 1/gamma0) for the long-lived single-excitation state.
struct LifetimeReport {
    double rate_minus_g = 0.0;       // 1 / Gamma_{-g}
    double undriven_slowest = 0.0;   // slowest Liouvillian mode with Omega0 = 0
    double driven_slowest = 0.0;     // slowest Liouvillian mode with the given drive
};

LifetimeReport lifetime_report(const CouplingSet& cs, const DriveSpec& drive);

} // namespace wqed
