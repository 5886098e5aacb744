// helpers.hpp: seeded random states and independent oracles shared by the test suites

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "wqed/layout.hpp"
#include "wqed/liouvillian.hpp"
#include "wqed/types.hpp"

namespace testing {

using wqed::cplx;
using wqed::Matrix;
using wqed::Vector;

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline Matrix random_complex(Eigen::Index rows, Eigen::Index cols)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(n(rng()), n(rng()));
    return m;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Matrix random_hermitian(Eigen::Index dim)
{
    const Matrix g = random_complex(dim, dim);
    return 0.5 * (g + g.adjoint());
}

inline Matrix random_density(Eigen::Index dim)
{
    const Matrix g = random_complex(dim, dim);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

inline Vector random_ket(Eigen::Index dim)
{
    return random_complex(dim, 1).col(0).normalized();
}

inline Matrix random_unitary(Eigen::Index dim)
{
    Eigen::HouseholderQR<Matrix> qr(random_complex(dim, dim));
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < dim; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
    return q;
}

inline double max_abs(const Matrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// sigma^- on atom n of n_atoms built by explicit tensor products (atom 0 leftmost).
inline Matrix lowering(int n_atoms, int n)
{
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1.0;
    Matrix out = Matrix::Identity(1, 1);
    for (int k = 0; k < n_atoms; ++k) out = kron(out, k == n ? s : Matrix::Identity(2, 2));
    return out;
}

// Gamma_jn = Re(w_j conj(w_n)) with w_j = sum_l sqrt(gamma_l) exp(i theta_l).
inline Eigen::MatrixXd decay_oracle(const wqed::AtomLayout& layout)
{
    const auto n = static_cast<Eigen::Index>(layout.size());
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& a = layout.atom(static_cast<std::size_t>(j));
        for (std::size_t l = 0; l < a.connection_phases.size(); ++l)
            w(j) += std::sqrt(a.point_rates[l]) * std::polar(1.0, a.connection_phases[l]);
    }
    return (w * w.adjoint()).real();
}

// Master equation through diagonal jump operators L_k = sqrt(lambda_k) sum_n U_nk sigma_n.
inline Matrix lindblad_oracle(const Matrix& h, const Eigen::MatrixXd& decay, const Matrix& rho)
{
    const int n_atoms = static_cast<int>(decay.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(decay);
    Matrix out = cplx(0.0, -1.0) * (h * rho - rho * h);
    for (int k = 0; k < n_atoms; ++k) {
        const double lam = std::max(0.0, es.eigenvalues()(k));
        Matrix l = Matrix::Zero(rho.rows(), rho.cols());
        for (int n = 0; n < n_atoms; ++n) l += std::sqrt(lam) * es.eigenvectors()(n, k) * lowering(n_atoms, n);
        const Matrix ld = l.adjoint();
        out += l * rho * ld - 0.5 * (ld * l * rho + rho * ld * l);
    }
    return out;
}

// Closed-form Hamiltonian from a coupling set, built with explicit tensor products.
inline Matrix hamiltonian_oracle(const wqed::CouplingSet& cs, double detuning, double amplitude)
{
    const int n_atoms = static_cast<int>(cs.size());
    const Eigen::Index dim = Eigen::Index{1} << n_atoms;
    Matrix h = Matrix::Zero(dim, dim);
    for (int n = 0; n < n_atoms; ++n) {
        const Matrix s = lowering(n_atoms, n);
        h += (detuning + cs.lamb_shift(n) + cs.bare_detuning(n)) * s.adjoint() * s;
        h += amplitude * (s + s.adjoint());
        for (int j = 0; j < n_atoms; ++j)
            if (j != n) h += cs.exchange(j, n) * lowering(n_atoms, j).adjoint() * s;
    }
    return h;
}

inline double trace_distance(const Matrix& a, const Matrix& b)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(a - b);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

} // namespace testing
