#include "wqed/layout.hpp"

#include <cmath>

namespace wqed {

std::optional<Geometry> parse_geometry(std::string_view name)
{
    if (name == "nested") return Geometry::nested;
    if (name == "braided") return Geometry::braided;
    if (name == "separated") return Geometry::separated;
    if (name == "small") return Geometry::small;
    return std::nullopt;
}

std::string_view to_string(Geometry g)
{
    switch (g) {
    case Geometry::nested: return "nested";
    case Geometry::braided: return "braided";
    case Geometry::separated: return "separated";
    case Geometry::small: return "small";
    }
    return "unknown";
}

AtomLayout::AtomLayout(std::vector<AtomSpec> atoms, std::string name)
    : atoms_(std::move(atoms)), name_(std::move(name))
{
    if (atoms_.empty())
        throw InputError("layout '" + name_ + "' has no atoms");
    if (atoms_.size() > static_cast<std::size_t>(kMaxAtoms))
        throw InputError("layout '" + name_ + "' has " + std::to_string(atoms_.size()) +
                         " atoms; at most " + std::to_string(kMaxAtoms) + " are supported");
    for (std::size_t n = 0; n < atoms_.size(); ++n) {
        const auto& a = atoms_[n];
        const std::string who = "atom " + std::to_string(n + 1) + " of layout '" + name_ + "'";
        if (a.connection_phases.empty())
            throw InputError(who + " has no connection points");
        if (a.connection_phases.size() != a.point_rates.size())
            throw InputError(who + ": connection_phases and point_rates differ in length");
        for (double x : a.connection_phases)
            if (!std::isfinite(x)) throw InputError(who + ": non-finite connection phase");
        for (double g : a.point_rates)
            if (!(g > 0.0) || !std::isfinite(g))
                throw InputError(who + ": point rates must be finite and strictly positive");
        if (!std::isfinite(a.bare_detuning))
            throw InputError(who + ": non-finite bare detuning");
    }
}

AtomLayout make_layout(Geometry kind, double spacing, double gamma0)
{
    if (!std::isfinite(spacing))
        throw InputError("layout spacing must be finite");
    if (!std::isfinite(gamma0) || !(gamma0 > 0.0))
        throw InputError("gamma0 must be finite and positive");

    // clear the low mantissa bits so that k * s (k <= 3) and all phase differences are exact
    int exponent = 0;
    std::frexp(spacing, &exponent);
    const double quantum = std::ldexp(1.0, exponent - 50);
    const double s = spacing == 0.0 ? 0.0 : std::round(spacing / quantum) * quantum;
    auto giant = [gamma0](std::vector<double> phases) {
        std::vector<double> rates(phases.size(), gamma0);
        return AtomSpec{std::move(phases), std::move(rates), 0.0};
    };

    std::vector<AtomSpec> atoms;
    switch (kind) {
    case Geometry::nested:
        atoms = {giant({0.0, 3 * s}), giant({s, 2 * s})};
        break;
    case Geometry::braided:
        atoms = {giant({0.0, 2 * s}), giant({s, 3 * s})};
        break;
    case Geometry::separated:
        atoms = {giant({0.0, s}), giant({2 * s, 3 * s})};
        break;
    case Geometry::small:
        atoms = {giant({0.0}), giant({s})};
        break;
    }
    return AtomLayout(std::move(atoms), std::string(to_string(kind)));
}

AtomLayout make_layout(std::string_view kind, double spacing, double gamma0)
{
    auto g = parse_geometry(kind);
    if (!g)
        throw InputError("unknown geometry '" + std::string(kind) +
                         "' (expected nested, braided, separated or small)");
    return make_layout(*g, spacing, gamma0);
}

AtomLayout single_atom(double gamma0)
{
    return AtomLayout({AtomSpec{{0.0}, {gamma0}, 0.0}}, "single");
}

CouplingSet coupling_set(const AtomLayout& layout)
{
    const auto n_atoms = static_cast<Eigen::Index>(layout.size());
    CouplingSet cs;
    cs.lamb_shift = RealVector::Zero(n_atoms);
    cs.exchange = RealMatrix::Zero(n_atoms, n_atoms);
    cs.decay = RealMatrix::Zero(n_atoms, n_atoms);
    cs.bare_detuning = RealVector::Zero(n_atoms);

    for (Eigen::Index j = 0; j < n_atoms; ++j) {
        const auto& aj = layout.atom(static_cast<std::size_t>(j));
        cs.bare_detuning(j) = aj.bare_detuning;
        for (Eigen::Index n = 0; n < n_atoms; ++n) {
            const auto& an = layout.atom(static_cast<std::size_t>(n));
            double s = 0.0, c = 0.0;
            for (std::size_t l = 0; l < aj.connection_phases.size(); ++l) {
                for (std::size_t m = 0; m < an.connection_phases.size(); ++m) {
                    const double w = std::sqrt(aj.point_rates[l] * an.point_rates[m]);
                    const double phi = std::abs(aj.connection_phases[l] - an.connection_phases[m]);
                    s += w * std::sin(phi);
                    c += w * std::cos(phi);
                }
            }
            cs.decay(j, n) = c;
            if (j == n)
                cs.lamb_shift(j) = 0.5 * s;
            else
                cs.exchange(j, n) = 0.5 * s;
        }
    }
    return cs;
}

} // namespace wqed
