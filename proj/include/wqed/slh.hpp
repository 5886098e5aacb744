// slh.hpp: SLH input-output network algebra on the joint atomic Hilbert space
//
// Operators are concrete dense matrices over the 2^N product space. The scattering
// matrix acts on ports and holds scalars.

#pragma once

#include <vector>

#include "wqed/layout.hpp"
#include "wqed/liouvillian.hpp"

namespace wqed {

struct SLHTriplet {
    Matrix scattering;             // ports x ports, unitary
    std::vector<Matrix> coupling;  // one operator per port
    Matrix hamiltonian;            // Hermitian

    Eigen::Index ports() const { return scattering.rows(); }
    Eigen::Index dim() const { return hamiltonian.rows(); }

    /// Throws InputError when S is not unitary, H not Hermitian (1e-12), or sizes disagree.
    void validate() const;
};

/// (exp(i phi) 1, 0, 0) on `ports` ports over an operator space of dimension `dim`.
SLHTriplet phase_element(double phi, Eigen::Index dim, Eigen::Index ports = 1);

/// (S, L, H) with a single port and identity scattering.
SLHTriplet local_element(const Matrix& coupling, const Matrix& hamiltonian);

/// second <| first = (S2 S1, L2 + S2 L1, H1 + H2 + Im(L2^dag S2 L1)).
SLHTriplet series_product(const SLHTriplet& second, const SLHTriplet& first);

/// first [+] second: block-diagonal S, stacked L, summed H.
SLHTriplet concatenate(const SLHTriplet& first, const SLHTriplet& second);

/// Composite triplet for a layout: the right-moving chain cascades connection points in
/// increasing phase, the left-moving chain in decreasing phase, with phase elements for the
/// gaps. Each point couples with sqrt(gamma/2) sigma^-. Atom n's local Hamiltonian
/// (Delta_p + eps_n) s^+ s^- and its drive are attached once, at its first right-moving point.
/// The two chains are concatenated (right, left).
SLHTriplet build_network(const AtomLayout& layout, const DriveSpec& drive);

/// Master equation of a triplet. Each L_c must lie in span{sigma_n^-};
/// the decay matrix is Gamma_jn = sum_c c_j conj(c_n). Scattering phases are dropped.
LindbladModel to_lindblad(const SLHTriplet& g);

/// Max entrywise |L_slh - L_closed| between the two superoperators for one layout and drive.
double slh_deviation(const AtomLayout& layout, const DriveSpec& drive);

} // namespace wqed
