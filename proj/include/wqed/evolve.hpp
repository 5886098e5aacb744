// evolve.hpp: time propagation and steady states of the master equation

#pragma once

#include <span>
#include <vector>

#include "wqed/liouvillian.hpp"
#include "wqed/spectral.hpp"

namespace wqed {

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

/// Positivity tolerance applied to every propagated state.
inline constexpr double kPropagationPositivityTol = 1e-7;

/// Exact propagation rho(t) = exp(L t) rho0 via Pade scaling-and-squaring on each interval.
/// A uniform grid reuses a single step matrix. `times` must start at 0 and increase strictly.
Trajectory propagate(const LindbladModel& model, const DensityMatrix& rho0, std::span<const double> times);

/// Adaptive Dormand-Prince integration of the same equation; for cross-checks and
/// generators that are later made time dependent.
Trajectory propagate_adaptive(const LindbladModel& model, const DensityMatrix& rho0,
                              std::span<const double> times, double abs_tol = 1e-12,
                              double rel_tol = 1e-10);

/// exp(L t) for a fixed model; reusable across many start states.
class Propagator {
public:
    explicit Propagator(const LindbladModel& model);
    Propagator(Matrix superop, Eigen::Index dim);

    Matrix evolve(const Matrix& rho, double t) const;
    Matrix step_matrix(double t) const;
    const Matrix& generator() const { return superop_; }
    Eigen::Index dim() const { return dim_; }

private:
    Matrix superop_;
    Eigen::Index dim_;
};

/// exp(L t) rho0 through the eigendecomposition of L, for evaluating one trajectory at many
/// arbitrary times. Falls back to matrix exponentials when the eigenbasis is ill conditioned
/// (near exceptional points).
class ModalPropagator {
public:
    ModalPropagator(const LindbladModel& model, const DensityMatrix& rho0);
    Matrix at(double t) const;
    bool uses_modes() const { return modal_; }
    /// Eigenvalues of L, sorted by descending real part.
    const Vector& rates() const { return sorted_; }

private:
    Propagator exact_;
    Matrix rho0_;
    Matrix modes_;
    Vector eigenvalues_;
    Vector weights_;
    Vector sorted_;
    bool modal_ = false;
};

struct SteadyState {
    DensityMatrix rho;
    double residual = 0.0;           // Frobenius norm of L[rho]
    double uniqueness_margin = 0.0;  // second-smallest singular value of the superoperator
    double superop_norm = 0.0;       // largest singular value
};

/// Null vector of the superoperator, Hermitized and trace-normalized.
/// Throws DegeneracyError when the second-smallest singular value is <= 1e-8 * ||L||.
SteadyState steady_state(const LindbladModel& model);

struct DressedPopulations {
    double ground = 0.0;
    double plus = 0.0;
    double minus = 0.0;
    double excited = 0.0;
};

/// Populations of |gg>, |psi_+>, |psi_->, |ee>; coherences between them are not included.
DressedPopulations decompose(const Matrix& rho, const DressedPair& basis);

/// (|ge> - |eg>)/sqrt(2) in the two-atom product basis.
Vector bell_singlet();

} // namespace wqed
