// liouvillian.hpp: Hamiltonian, dissipator and vectorized Liouvillian for N driven atoms
//
// Basis: |g> -> 0, |e> -> 1 per atom; the product index is sum_n bit_n * 2^(N-1-n),
// so atom 1 is the most significant bit (|gg>=0, |ge>=1, |eg>=2, |ee>=3).
// Vectorization is column stacking: vec(A X B) = (B^T kron A) vec(X).

#pragma once

#include <optional>
#include <vector>

#include "wqed/layout.hpp"
#include "wqed/types.hpp"

namespace wqed {

/// How the Rabi frequency enters the Hamiltonian.
///   rabi_frequency : H_drive = (Omega0/2) sum_n (sigma_n^+ + sigma_n^-)
///   literal        : H_drive =  Omega0    sum_n (sigma_n^+ + sigma_n^-)
enum class DriveConvention { rabi_frequency, literal };

struct DriveSpec {
    double rabi = 0.0;      // Omega0, units of gamma0
    double detuning = 0.0;  // Delta_p; field frequency = omega - Delta_p
    DriveConvention convention = DriveConvention::rabi_frequency;

    /// Coefficient multiplying (sigma^+ + sigma^-) in H.
    double amplitude() const { return convention == DriveConvention::literal ? rabi : 0.5 * rabi; }
    void validate() const;

    bool operator==(const DriveSpec&) const = default;
};

/// Generator of the master equation in the frame rotating at the drive frequency.
struct LindbladModel {
    Matrix hamiltonian;            // Hermitian, dim x dim, hbar = 1
    Matrix decay;                  // Hermitian PSD N x N (real symmetric for waveguide couplings)
    std::vector<Matrix> lowering;  // sigma_n^- in the product basis
    std::optional<DriveSpec> drive;

    Eigen::Index dim() const { return hamiltonian.rows(); }
    int atoms() const { return static_cast<int>(lowering.size()); }
};

/// Lowering operators sigma_n^- for n = 0..n_atoms-1 in the product basis.
std::vector<Matrix> lowering_operators(int n_atoms);

/// Total excitation-number operator sum_n sigma_n^+ sigma_n^-.
Matrix excitation_number(int n_atoms);

/// Computational basis ket for a bit pattern (atom 1 = most significant bit).
Vector basis_ket(int n_atoms, unsigned index);

/// H = sum_n (Delta_p + delta_n + eps_n) s_n^+ s_n^- + sum_{j!=n} Delta_jn s_j^+ s_n^- + H_drive.
LindbladModel build_model(const CouplingSet& cs, const DriveSpec& drive);

/// Validating constructor shared by every route that produces a model.
/// Throws PhysicsError if decay is not PSD to 1e-10 relative to its largest diagonal entry.
LindbladModel make_model(Matrix hamiltonian, Matrix decay, std::optional<DriveSpec> drive);

/// d rho / dt.
Matrix apply_liouvillian(const LindbladModel& model, const Matrix& rho);

/// Dense dim^2 x dim^2 matrix acting on column-stacked vec(rho).
Matrix superoperator(const LindbladModel& model);

Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, Eigen::Index dim);

/// Hermitian, unit-trace, positive semidefinite density matrix.
class DensityMatrix {
public:
    static constexpr double kDefaultTolerance = 1e-9;

    /// Validates: Hermitian and unit trace to `tol`, min eigenvalue >= -positivity_tol.
    explicit DensityMatrix(Matrix m, double tol = kDefaultTolerance,
                           double positivity_tol = kDefaultTolerance);

    static DensityMatrix pure(const Vector& ket);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    const Matrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    double population(Eigen::Index i) const { return m_(i, i).real(); }
    double expectation(const Vector& ket) const { return (ket.adjoint() * m_ * ket)(0, 0).real(); }

private:
    Matrix m_;
};

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const Matrix& m);

} // namespace wqed
