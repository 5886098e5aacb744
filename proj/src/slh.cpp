#include "wqed/slh.hpp"

#include <algorithm>
#include <cmath>

namespace wqed {

namespace {

Matrix im_part(const Matrix& x)
{
    return (x - x.adjoint()) / cplx(0.0, 2.0);
}

int atoms_for_dim(Eigen::Index dim)
{
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    if ((Eigen::Index{1} << n) != dim || n < 1 || n > kMaxAtoms)
        throw InputError("operator dimension " + std::to_string(dim) + " is not 2^N with 1 <= N <= 6");
    return n;
}

struct ConnectionPoint {
    double phase;
    std::size_t atom;
    std::size_t index;
    double rate;
};

} // namespace

void SLHTriplet::validate() const
{
    const Eigen::Index p = scattering.rows();
    if (scattering.cols() != p || p < 1)
        throw InputError("scattering matrix must be square with at least one port");
    if (static_cast<Eigen::Index>(coupling.size()) != p)
        throw InputError("number of coupling operators does not match the port count");
    if ((scattering.adjoint() * scattering - Matrix::Identity(p, p)).cwiseAbs().maxCoeff() > 1e-12)
        throw InputError("scattering matrix is not unitary");
    const Eigen::Index d = hamiltonian.rows();
    if (hamiltonian.cols() != d)
        throw InputError("Hamiltonian must be square");
    const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError("Hamiltonian is not Hermitian");
    for (const auto& l : coupling)
        if (l.rows() != d || l.cols() != d)
            throw InputError("coupling operator dimension does not match the Hamiltonian");
}

SLHTriplet phase_element(double phi, Eigen::Index dim, Eigen::Index ports)
{
    SLHTriplet g;
    g.scattering = std::polar(1.0, phi) * Matrix::Identity(ports, ports);
    g.coupling.assign(static_cast<std::size_t>(ports), Matrix::Zero(dim, dim));
    g.hamiltonian = Matrix::Zero(dim, dim);
    return g;
}

SLHTriplet local_element(const Matrix& coupling, const Matrix& hamiltonian)
{
    SLHTriplet g;
    g.scattering = Matrix::Identity(1, 1);
    g.coupling = {coupling};
    g.hamiltonian = hamiltonian;
    g.validate();
    return g;
}

SLHTriplet series_product(const SLHTriplet& second, const SLHTriplet& first)
{
    if (second.ports() != first.ports())
        throw InputError("series product needs matching port counts");
    if (second.dim() != first.dim())
        throw InputError("series product needs a common operator space");

    const auto p = static_cast<std::size_t>(first.ports());
    const Eigen::Index d = first.dim();
    SLHTriplet out;
    out.scattering = second.scattering * first.scattering;

    // S2 L1 (S acts on the port index)
    std::vector<Matrix> routed(p, Matrix::Zero(d, d));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            routed[i] += second.scattering(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                         first.coupling[j];

    out.coupling.resize(p);
    Matrix cross = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < p; ++i) {
        out.coupling[i] = second.coupling[i] + routed[i];
        cross += second.coupling[i].adjoint() * routed[i];
    }
    out.hamiltonian = first.hamiltonian + second.hamiltonian + im_part(cross);
    out.hamiltonian = 0.5 * (out.hamiltonian + out.hamiltonian.adjoint());
    return out;
}

SLHTriplet concatenate(const SLHTriplet& first, const SLHTriplet& second)
{
    if (first.dim() != second.dim())
        throw InputError("concatenation needs a common operator space");
    const Eigen::Index pa = first.ports();
    const Eigen::Index pb = second.ports();
    SLHTriplet out;
    out.scattering = Matrix::Zero(pa + pb, pa + pb);
    out.scattering.topLeftCorner(pa, pa) = first.scattering;
    out.scattering.bottomRightCorner(pb, pb) = second.scattering;
    out.coupling = first.coupling;
    out.coupling.insert(out.coupling.end(), second.coupling.begin(), second.coupling.end());
    out.hamiltonian = first.hamiltonian + second.hamiltonian;
    return out;
}

SLHTriplet build_network(const AtomLayout& layout, const DriveSpec& drive)
{
    drive.validate();
    const int n_atoms = static_cast<int>(layout.size());
    if (n_atoms > kMaxAtoms)
        throw InputError("unsupported layout: more than " + std::to_string(kMaxAtoms) + " atoms");

    const auto s = lowering_operators(n_atoms);
    const Eigen::Index dim = s[0].rows();

    std::vector<ConnectionPoint> points;
    for (std::size_t n = 0; n < layout.size(); ++n) {
        const auto& a = layout.atom(n);
        for (std::size_t j = 0; j < a.connection_phases.size(); ++j)
            points.push_back({a.connection_phases[j], n, j, a.point_rates[j]});
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const ConnectionPoint& x, const ConnectionPoint& y) { return x.phase < y.phase; });

    // atom n's Hamiltonian (local detuning + drive) rides on its first right-moving point
    std::vector<bool> attached(layout.size(), false);
    auto right_element = [&](const ConnectionPoint& p) {
        const Matrix l = std::sqrt(0.5 * p.rate) * s[p.atom];
        if (attached[p.atom]) return local_element(l, Matrix::Zero(dim, dim));
        attached[p.atom] = true;
        const Matrix sp = s[p.atom].adjoint();
        const double eps = layout.atom(p.atom).bare_detuning;
        const Matrix h0 = (drive.detuning + eps) * (sp * s[p.atom]);
        const Matrix hc = drive.amplitude() * (sp + s[p.atom]);
        SLHTriplet control = local_element(Matrix::Zero(dim, dim), hc);
        return series_product(local_element(l, h0), control);
    };
    auto left_element = [&](const ConnectionPoint& p) {
        return local_element(std::sqrt(0.5 * p.rate) * s[p.atom], Matrix::Zero(dim, dim));
    };

    SLHTriplet right = right_element(points.front());
    for (std::size_t k = 1; k < points.size(); ++k) {
        const double gap = points[k].phase - points[k - 1].phase;
        right = series_product(right_element(points[k]), series_product(phase_element(gap, dim), right));
    }

    SLHTriplet left = left_element(points.back());
    for (std::size_t k = points.size() - 1; k-- > 0;) {
        const double gap = points[k + 1].phase - points[k].phase;
        left = series_product(left_element(points[k]), series_product(phase_element(gap, dim), left));
    }

    SLHTriplet total = concatenate(right, left);
    total.validate();
    return total;
}

LindbladModel to_lindblad(const SLHTriplet& g)
{
    g.validate();
    const int n_atoms = atoms_for_dim(g.dim());
    const auto s = lowering_operators(n_atoms);
    const double norm = static_cast<double>(Eigen::Index{1} << (n_atoms - 1));  // tr(s^+ s)

    Matrix decay = Matrix::Zero(n_atoms, n_atoms);
    for (std::size_t c = 0; c < g.coupling.size(); ++c) {
        const Matrix& l = g.coupling[c];
        Vector coeff(n_atoms);
        Matrix rebuilt = Matrix::Zero(g.dim(), g.dim());
        for (int n = 0; n < n_atoms; ++n) {
            coeff(n) = (s[n].adjoint() * l).trace() / norm;
            rebuilt += coeff(n) * s[n];
        }
        const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
        if ((l - rebuilt).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw InputError("coupling operator " + std::to_string(c) +
                             " is not a combination of single-atom lowering operators");
        decay += coeff * coeff.adjoint();
    }
    return make_model(g.hamiltonian, decay, std::nullopt);
}

double slh_deviation(const AtomLayout& layout, const DriveSpec& drive)
{
    const Matrix from_network = superoperator(to_lindblad(build_network(layout, drive)));
    const Matrix closed_form = superoperator(build_model(coupling_set(layout), drive));
    return (from_network - closed_form).cwiseAbs().maxCoeff();
}

} // namespace wqed
