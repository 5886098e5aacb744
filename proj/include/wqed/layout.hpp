// layout.hpp: atom/waveguide connection geometries and the master-equation coefficients they induce

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

enum class Geometry { nested, braided, separated, small };

std::optional<Geometry> parse_geometry(std::string_view name);
std::string_view to_string(Geometry g);

/// One emitter. Positions are stored as phases kappa*x (radians); rates are in units of gamma0.
struct AtomSpec {
    std::vector<double> connection_phases;
    std::vector<double> point_rates;
    double bare_detuning = 0.0;

    bool operator==(const AtomSpec&) const = default;
};

/// Ordered set of atoms plus a label. Validated on construction.
class AtomLayout {
public:
    AtomLayout(std::vector<AtomSpec> atoms, std::string name);

    const std::vector<AtomSpec>& atoms() const { return atoms_; }
    const AtomSpec& atom(std::size_t n) const { return atoms_.at(n); }
    std::size_t size() const { return atoms_.size(); }
    const std::string& name() const { return name_; }

private:
    std::vector<AtomSpec> atoms_;
    std::string name_;
};

/// Named two-atom geometry with equal neighbour spacing `spacing` = kappa*dx.
///   nested    : atom 1 at {0, 3s}, atom 2 at {s, 2s}
///   braided   : atom 1 at {0, 2s}, atom 2 at {s, 3s}
///   separated : atom 1 at {0, s},  atom 2 at {2s, 3s}
///   small     : atom 1 at {0},     atom 2 at {s}
AtomLayout make_layout(Geometry kind, double spacing, double gamma0 = 1.0);
AtomLayout make_layout(std::string_view kind, double spacing, double gamma0 = 1.0);

/// Single point-like atom with rate gamma0.
AtomLayout single_atom(double gamma0 = 1.0);

/// Waveguide-induced coefficients of the master equation (all in units of gamma0).
struct CouplingSet {
    RealVector lamb_shift;     // delta_n
    RealMatrix exchange;       // Delta_jn, symmetric, zero diagonal
    RealMatrix decay;          // Gamma_jn, symmetric PSD; diagonal = single-atom rates
    RealVector bare_detuning;  // eps_n

    std::size_t size() const { return static_cast<std::size_t>(lamb_shift.size()); }
    /// delta_1 - delta_2 (two atoms).
    double lamb_shift_difference() const { return lamb_shift(0) - lamb_shift(1); }
};

/// Direct double sum over connection-point pairs, phase |theta_l - theta_m|.
CouplingSet coupling_set(const AtomLayout& layout);

} // namespace wqed
