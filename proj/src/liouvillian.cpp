#include "wqed/liouvillian.hpp"

#include <cmath>
#include <sstream>

namespace wqed {

void DriveSpec::validate() const
{
    if (!std::isfinite(rabi) || !std::isfinite(detuning))
        throw InputError("drive parameters must be finite");
    if (rabi < 0.0)
        throw InputError("Rabi frequency must be non-negative");
}

std::vector<Matrix> lowering_operators(int n_atoms)
{
    if (n_atoms < 1 || n_atoms > kMaxAtoms)
        throw InputError("atom count " + std::to_string(n_atoms) + " outside [1, " +
                         std::to_string(kMaxAtoms) + "]");
    const Eigen::Index dim = Eigen::Index{1} << n_atoms;
    std::vector<Matrix> ops;
    ops.reserve(static_cast<std::size_t>(n_atoms));
    for (int n = 0; n < n_atoms; ++n) {
        const Eigen::Index bit = Eigen::Index{1} << (n_atoms - 1 - n);
        Matrix s = Matrix::Zero(dim, dim);
        for (Eigen::Index k = 0; k < dim; ++k)
            if (k & bit) s(k & ~bit, k) = 1.0;
        ops.push_back(std::move(s));
    }
    return ops;
}

Matrix excitation_number(int n_atoms)
{
    const auto ops = lowering_operators(n_atoms);
    Matrix n = Matrix::Zero(ops[0].rows(), ops[0].cols());
    for (const auto& s : ops) n += s.adjoint() * s;
    return n;
}

Vector basis_ket(int n_atoms, unsigned index)
{
    const Eigen::Index dim = Eigen::Index{1} << n_atoms;
    if (static_cast<Eigen::Index>(index) >= dim)
        throw InputError("basis index out of range");
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return v;
}

double min_eigenvalue(const Matrix& m)
{
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

LindbladModel make_model(Matrix hamiltonian, Matrix decay, std::optional<DriveSpec> drive)
{
    const Eigen::Index n_atoms = decay.rows();
    if (decay.cols() != n_atoms || n_atoms < 1 || n_atoms > kMaxAtoms)
        throw InputError("decay matrix must be square with 1..6 rows");
    const Eigen::Index dim = Eigen::Index{1} << n_atoms;
    if (hamiltonian.rows() != dim || hamiltonian.cols() != dim)
        throw InputError("Hamiltonian dimension does not match 2^N");

    const double h_scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * h_scale)
        throw PhysicsError("Hamiltonian is not Hermitian");
    if ((decay - decay.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, decay.cwiseAbs().maxCoeff()))
        throw PhysicsError("decay matrix is not Hermitian");

    const double diag_scale = decay.diagonal().real().cwiseAbs().maxCoeff();
    // relative tolerance, floored at rounding level for (near-)decoupled layouts where Gamma ~ 0
    const double psd_tol = std::max(1e-10 * diag_scale, 1e-14);
    const double lowest = min_eigenvalue(decay);
    if (lowest < -psd_tol) {
        std::ostringstream os;
        os << "decay matrix is not positive semidefinite: eigenvalue " << lowest
           << " below tolerance " << -psd_tol;
        throw PhysicsError(os.str());
    }

    LindbladModel m;
    m.hamiltonian = 0.5 * (hamiltonian + hamiltonian.adjoint());
    m.decay = 0.5 * (decay + decay.adjoint());
    m.lowering = lowering_operators(static_cast<int>(n_atoms));
    m.drive = drive;
    return m;
}

LindbladModel build_model(const CouplingSet& cs, const DriveSpec& drive)
{
    drive.validate();
    const int n_atoms = static_cast<int>(cs.size());
    const auto s = lowering_operators(n_atoms);
    const Eigen::Index dim = s[0].rows();

    Matrix h = Matrix::Zero(dim, dim);
    const double amp = drive.amplitude();
    for (int n = 0; n < n_atoms; ++n) {
        const Matrix sp = s[n].adjoint();
        h += (drive.detuning + cs.lamb_shift(n) + cs.bare_detuning(n)) * (sp * s[n]);
        h += amp * (sp + s[n]);
        for (int j = 0; j < n_atoms; ++j)
            if (j != n) h += cs.exchange(j, n) * (s[j].adjoint() * s[n]);
    }
    return make_model(std::move(h), cs.decay.cast<cplx>(), drive);
}

Matrix apply_liouvillian(const LindbladModel& model, const Matrix& rho)
{
    if (rho.rows() != model.dim() || rho.cols() != model.dim())
        throw InputError("density matrix dimension " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + " does not match model dimension " +
                         std::to_string(model.dim()));
    const cplx i(0.0, 1.0);
    Matrix out = -i * (model.hamiltonian * rho - rho * model.hamiltonian);
    const auto& s = model.lowering;
    for (int j = 0; j < model.atoms(); ++j) {
        for (int n = 0; n < model.atoms(); ++n) {
            const cplx g = model.decay(j, n);
            if (g == cplx(0.0)) continue;
            const Matrix k = s[n].adjoint() * s[j];
            out += g * (s[j] * rho * s[n].adjoint() - 0.5 * (k * rho + rho * k));
        }
    }
    return out;
}

namespace {

// vec(A X B) = (B^T kron A) vec(X)
Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

} // namespace

Matrix superoperator(const LindbladModel& model)
{
    const Eigen::Index dim = model.dim();
    if (model.atoms() > kMaxAtoms)
        throw InputError("dense superoperator limited to " + std::to_string(kMaxAtoms) + " atoms");
    const Matrix id = Matrix::Identity(dim, dim);
    const cplx i(0.0, 1.0);

    Matrix sup = -i * (kron(id, model.hamiltonian) - kron(model.hamiltonian.transpose(), id));
    const auto& s = model.lowering;
    for (int j = 0; j < model.atoms(); ++j) {
        for (int n = 0; n < model.atoms(); ++n) {
            const cplx g = model.decay(j, n);
            if (g == cplx(0.0)) continue;
            const Matrix k = s[n].adjoint() * s[j];
            sup += g * (kron(s[n].adjoint().transpose(), s[j]) -
                        0.5 * kron(id, k) - 0.5 * kron(k.transpose(), id));
        }
    }
    return sup;
}

Vector vectorize(const Matrix& m)
{
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, Eigen::Index dim)
{
    if (v.size() != dim * dim)
        throw InputError("vector length does not match dim^2");
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

DensityMatrix::DensityMatrix(Matrix m, double tol, double positivity_tol) : m_(std::move(m))
{
    if (m_.rows() != m_.cols() || m_.rows() == 0)
        throw InputError("density matrix must be square and non-empty");
    if (!m_.allFinite())
        throw PhysicsError("density matrix has non-finite entries");
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol)
        throw PhysicsError("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol || std::abs(m_.trace().imag()) > tol)
        throw PhysicsError("density matrix trace " + std::to_string(tr) + " differs from 1");
    const double lowest = min_eigenvalue(m_);
    if (lowest < -positivity_tol) {
        std::ostringstream os;
        os << "density matrix not positive semidefinite (min eigenvalue " << lowest << ")";
        throw PhysicsError(os.str());
    }
}

DensityMatrix DensityMatrix::pure(const Vector& ket)
{
    const double norm = ket.norm();
    if (!(norm > 0.0))
        throw InputError("cannot build a pure state from a zero vector");
    const Vector k = ket / norm;
    return DensityMatrix(k * k.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim)
{
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

} // namespace wqed
