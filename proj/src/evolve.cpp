#include "wqed/evolve.hpp"

#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace wqed {

namespace {

void check_grid(std::span<const double> times)
{
    if (times.empty())
        throw InputError("time grid is empty");
    if (times.front() != 0.0)
        throw InputError("time grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!std::isfinite(times[k]) || !(times[k] > times[k - 1]))
            throw InputError("time grid must be finite and strictly increasing");
    }
}

void check_state(const LindbladModel& model, const DensityMatrix& rho0)
{
    if (rho0.dim() != model.dim())
        throw InputError("initial state dimension does not match the model");
}

DensityMatrix validated(Matrix m, double t)
{
    try {
        return DensityMatrix(std::move(m), DensityMatrix::kDefaultTolerance, kPropagationPositivityTol);
    } catch (const PhysicsError& e) {
        std::ostringstream os;
        os << "propagated state at t = " << t << " failed validation: " << e.what();
        throw IntegratorError(os.str());
    }
}

bool is_uniform(std::span<const double> times)
{
    if (times.size() < 3) return true;
    const double dt = times[1] - times[0];
    for (std::size_t k = 2; k < times.size(); ++k)
        if (std::abs((times[k] - times[k - 1]) - dt) > 1e-12 * std::max(1.0, times[k]))
            return false;
    return true;
}

} // namespace

Propagator::Propagator(const LindbladModel& model) : superop_(superoperator(model)), dim_(model.dim()) {}

Propagator::Propagator(Matrix superop, Eigen::Index dim) : superop_(std::move(superop)), dim_(dim)
{
    if (superop_.rows() != dim * dim || superop_.cols() != dim * dim)
        throw InputError("superoperator size does not match dim^2");
}

Matrix Propagator::step_matrix(double t) const
{
    return (superop_ * cplx(t)).exp();
}

Matrix Propagator::evolve(const Matrix& rho, double t) const
{
    if (t == 0.0) return rho;
    return unvectorize(step_matrix(t) * vectorize(rho), dim_);
}

ModalPropagator::ModalPropagator(const LindbladModel& model, const DensityMatrix& rho0)
    : exact_(model), rho0_(rho0.matrix())
{
    check_state(model, rho0);
    Eigen::ComplexEigenSolver<Matrix> es(exact_.generator());
    eigenvalues_ = es.eigenvalues();
    modes_ = es.eigenvectors();
    sorted_ = liouvillian_spectrum(exact_.generator());

    Eigen::PartialPivLU<Matrix> lu(modes_);
    weights_ = lu.solve(vectorize(rho0_));
    // accept the modal form only if it reproduces exp(L t) at a few probe times
    const double scale = std::max(1.0, eigenvalues_.cwiseAbs().maxCoeff());
    modal_ = weights_.allFinite() && (modes_ * weights_ - vectorize(rho0_)).norm() < 1e-11;
    for (double t : {0.37 / scale, 3.1 / scale, 29.0 / scale}) {
        if (!modal_) break;
        modal_ = (at(t) - exact_.evolve(rho0_, t)).cwiseAbs().maxCoeff() < 1e-11;
    }
}

Matrix ModalPropagator::at(double t) const
{
    if (!modal_) return exact_.evolve(rho0_, t);
    const Vector w = weights_.cwiseProduct((eigenvalues_ * t).array().exp().matrix());
    Matrix m = unvectorize(modes_ * w, exact_.dim());
    return 0.5 * (m + m.adjoint());
}

Trajectory propagate(const LindbladModel& model, const DensityMatrix& rho0, std::span<const double> times)
{
    check_grid(times);
    check_state(model, rho0);
    const Propagator prop(model);

    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(times.size());
    traj.states.push_back(rho0);

    Vector v = vectorize(rho0.matrix());
    if (times.size() == 1) return traj;

    const bool uniform = is_uniform(times);
    Matrix step;
    if (uniform) step = prop.step_matrix(times[1] - times[0]);

    for (std::size_t k = 1; k < times.size(); ++k) {
        if (uniform)
            v = step * v;
        else
            v = prop.step_matrix(times[k] - times[k - 1]) * v;
        traj.states.push_back(validated(unvectorize(v, model.dim()), times[k]));
    }
    return traj;
}

Trajectory propagate_adaptive(const LindbladModel& model, const DensityMatrix& rho0,
                              std::span<const double> times, double abs_tol, double rel_tol)
{
    namespace ode = boost::numeric::odeint;
    using State = std::vector<cplx>;

    check_grid(times);
    check_state(model, rho0);
    const Matrix sup = superoperator(model);
    const Eigen::Index n = sup.rows();

    auto rhs = [&sup, n](const State& x, State& dxdt, double) {
        Eigen::Map<const Vector> xv(x.data(), n);
        Eigen::Map<Vector> dv(dxdt.data(), n);
        dv.noalias() = sup * xv;
    };

    const Vector v0 = vectorize(rho0.matrix());
    State x(v0.data(), v0.data() + n);

    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(times.size());
    auto observer = [&](const State& s, double t) {
        Eigen::Map<const Vector> sv(s.data(), n);
        if (traj.states.empty())
            traj.states.push_back(rho0);
        else
            traj.states.push_back(validated(unvectorize(Vector(sv), model.dim()), t));
    };

    const double dt0 = times.size() > 1 ? std::min(1e-3, times[1] - times[0]) : 1e-3;
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(abs_tol, rel_tol);
    std::vector<double> grid(times.begin(), times.end());
    ode::integrate_times(stepper, rhs, x, grid.begin(), grid.end(), dt0, observer);
    return traj;
}

SteadyState steady_state(const LindbladModel& model)
{
    const Matrix sup = superoperator(model);
    const Eigen::Index n = sup.rows();

    Eigen::VectorXd sv;
    Vector null_vec;
    if (n <= 64) {
        Eigen::JacobiSVD<Matrix> svd(sup, Eigen::ComputeFullV);
        sv = svd.singularValues();
        null_vec = svd.matrixV().col(n - 1);
    } else {
        Eigen::BDCSVD<Matrix> svd(sup, Eigen::ComputeFullV);
        sv = svd.singularValues();
        null_vec = svd.matrixV().col(n - 1);
    }

    const double norm = sv(0);
    const double margin = sv(n - 2);
    if (!(margin > 1e-8 * norm)) {
        std::ostringstream os;
        os << "steady state is not unique (second-smallest singular value " << margin
           << " <= 1e-8 * " << norm << "); propagate to convergence from a chosen initial state instead";
        throw DegeneracyError(os.str());
    }

    // the null vector carries an arbitrary complex phase; dividing by the trace removes it
    Matrix rho = unvectorize(null_vec, model.dim());
    const cplx tr = rho.trace();
    if (std::abs(tr) < 1e-14)
        throw PhysicsError("steady-state null vector has vanishing trace");
    rho /= tr;
    rho = 0.5 * (rho + rho.adjoint());

    const double residual = apply_liouvillian(model, rho).norm();
    return SteadyState{DensityMatrix(std::move(rho)), residual, margin, norm};
}

DressedPopulations decompose(const Matrix& rho, const DressedPair& basis)
{
    if (rho.rows() != 4 || rho.cols() != 4)
        throw InputError("dressed-basis decomposition needs a two-atom (4x4) density matrix");
    auto pop = [&rho](const Vector& k) { return (k.adjoint() * rho * k)(0, 0).real(); };
    DressedPopulations p;
    p.ground = rho(0, 0).real();
    p.excited = rho(3, 3).real();
    p.plus = pop(basis.ket_plus());
    p.minus = pop(basis.ket_minus());
    return p;
}

Vector bell_singlet()
{
    Vector v = Vector::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return v;
}

} // namespace wqed
