// module.cpp: Python bindings for the giant-atom waveguide QED core

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "wqed/evolve.hpp"
#include "wqed/layout.hpp"
#include "wqed/liouvillian.hpp"
#include "wqed/observables.hpp"
#include "wqed/runner/config.hpp"
#include "wqed/runner/scenario.hpp"
#include "wqed/runner/sweep.hpp"
#include "wqed/slh.hpp"
#include "wqed/spectral.hpp"

namespace py = pybind11;
using namespace wqed;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style>;

ComplexArray stack(const std::vector<DensityMatrix>& states)
{
    const auto d = states.empty() ? 0 : states.front().dim();
    ComplexArray out({static_cast<py::ssize_t>(states.size()), static_cast<py::ssize_t>(d),
                      static_cast<py::ssize_t>(d)});
    auto buf = out.mutable_unchecked<3>();
    for (std::size_t k = 0; k < states.size(); ++k)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                buf(static_cast<py::ssize_t>(k), i, j) = states[k].matrix()(i, j);
    return out;
}

py::dict table_dict(const runner::Table& t)
{
    py::dict columns;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        py::array_t<double> col(static_cast<py::ssize_t>(t.rows.size()));
        auto buf = col.mutable_unchecked<1>();
        for (std::size_t r = 0; r < t.rows.size(); ++r) buf(static_cast<py::ssize_t>(r)) = t.rows[r][c];
        columns[py::str(t.columns[c])] = col;
    }
    return columns;
}

LindbladModel model_from(const AtomLayout& layout, const DriveSpec& drive)
{
    return build_model(coupling_set(layout), drive);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Two giant atoms in a waveguide: master equation, spectra, photon statistics, SLH networks";

    auto error = py::register_exception<Error>(m, "WqedError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<IoError>(m, "IoError", error.ptr());
    auto physics = py::register_exception<PhysicsError>(m, "PhysicsError", error.ptr());
    py::register_exception<DegeneracyError>(m, "DegeneracyError", physics.ptr());
    py::register_exception<DarkStateError>(m, "DarkStateError", physics.ptr());
    py::register_exception<IntegratorError>(m, "IntegratorError", physics.ptr());

    py::enum_<Geometry>(m, "Geometry")
        .value("nested", Geometry::nested)
        .value("braided", Geometry::braided)
        .value("separated", Geometry::separated)
        .value("small", Geometry::small);
    py::enum_<DriveConvention>(m, "DriveConvention")
        .value("rabi_frequency", DriveConvention::rabi_frequency)
        .value("literal", DriveConvention::literal);
    py::enum_<Direction>(m, "Direction").value("left", Direction::left).value("right", Direction::right);

    py::class_<AtomSpec>(m, "AtomSpec")
        .def(py::init<std::vector<double>, std::vector<double>, double>(), py::arg("connection_phases"),
             py::arg("point_rates"), py::arg("bare_detuning") = 0.0)
        .def_readonly("connection_phases", &AtomSpec::connection_phases)
        .def_readonly("point_rates", &AtomSpec::point_rates)
        .def_readonly("bare_detuning", &AtomSpec::bare_detuning);

    py::class_<AtomLayout>(m, "AtomLayout")
        .def(py::init<std::vector<AtomSpec>, std::string>(), py::arg("atoms"), py::arg("name") = "custom")
        .def_property_readonly("atoms", &AtomLayout::atoms)
        .def_property_readonly("name", &AtomLayout::name)
        .def("__len__", &AtomLayout::size);

    m.def("make_layout", py::overload_cast<std::string_view, double, double>(&make_layout), py::arg("kind"),
          py::arg("spacing"), py::arg("gamma0") = 1.0, "Named two-atom layout; spacing is kappa*dx in radians.");
    m.def("single_atom", &single_atom, py::arg("gamma0") = 1.0);

    py::class_<CouplingSet>(m, "CouplingSet")
        .def_readonly("lamb_shift", &CouplingSet::lamb_shift)
        .def_readonly("exchange", &CouplingSet::exchange)
        .def_readonly("decay", &CouplingSet::decay)
        .def_readonly("bare_detuning", &CouplingSet::bare_detuning)
        .def("lamb_shift_difference", &CouplingSet::lamb_shift_difference);
    m.def("coupling_set", &coupling_set, py::arg("layout"));

    py::class_<DriveSpec>(m, "DriveSpec")
        .def(py::init([](double rabi, double detuning, DriveConvention convention) {
                 DriveSpec d{rabi, detuning, convention};
                 d.validate();
                 return d;
             }),
             py::arg("rabi") = 0.0, py::arg("detuning") = 0.0,
             py::arg("convention") = DriveConvention::rabi_frequency)
        .def_readwrite("rabi", &DriveSpec::rabi)
        .def_readwrite("detuning", &DriveSpec::detuning)
        .def_readwrite("convention", &DriveSpec::convention)
        .def("amplitude", &DriveSpec::amplitude);

    py::class_<LindbladModel>(m, "LindbladModel")
        .def_readonly("hamiltonian", &LindbladModel::hamiltonian)
        .def_readonly("decay", &LindbladModel::decay)
        .def_readonly("lowering", &LindbladModel::lowering)
        .def_property_readonly("dim", &LindbladModel::dim);
    m.def("build_model", &build_model, py::arg("couplings"), py::arg("drive") = DriveSpec{});
    m.def("model", &model_from, py::arg("layout"), py::arg("drive") = DriveSpec{},
          "build_model(coupling_set(layout), drive)");
    m.def("superoperator", &superoperator, py::arg("model"));
    m.def("apply_liouvillian", &apply_liouvillian, py::arg("model"), py::arg("rho"));
    m.def("basis_ket", &basis_ket, py::arg("n_atoms"), py::arg("index"));
    m.def("bell_singlet", &bell_singlet);

    py::class_<DressedPair>(m, "DressedPair")
        .def_readonly("splitting", &DressedPair::splitting)
        .def_readonly("energy_plus", &DressedPair::energy_plus)
        .def_readonly("energy_minus", &DressedPair::energy_minus)
        .def_readonly("energy_excited", &DressedPair::energy_excited)
        .def("ket_plus", &DressedPair::ket_plus)
        .def("ket_minus", &DressedPair::ket_minus);
    m.def("dressed_states", &dressed_states, py::arg("couplings"));

    py::class_<RateQuartet>(m, "RateQuartet")
        .def_readonly("e_plus", &RateQuartet::e_plus)
        .def_readonly("e_minus", &RateQuartet::e_minus)
        .def_readonly("plus_g", &RateQuartet::plus_g)
        .def_readonly("minus_g", &RateQuartet::minus_g)
        .def_readonly("splitting", &RateQuartet::splitting);
    m.def("transition_rates", &transition_rates, py::arg("couplings"));
    m.def("extract_rate", &extract_rate, py::arg("model"), py::arg("source"), py::arg("target"));
    m.def(
        "drive_couplings",
        [](double delta12, double exchange12, double rabi) {
            const auto c = drive_couplings(delta12, exchange12, rabi);
            return py::make_tuple(c.plus, c.minus);
        },
        py::arg("delta12"), py::arg("exchange12"), py::arg("rabi"), "Returns (Omega_plus, Omega_minus).");
    m.def(
        "lifetime_report",
        [](const CouplingSet& cs, const DriveSpec& d) {
            const auto r = lifetime_report(cs, d);
            py::dict out;
            out["rate_minus_g"] = r.rate_minus_g;
            out["undriven_slowest"] = r.undriven_slowest;
            out["driven_slowest"] = r.driven_slowest;
            return out;
        },
        py::arg("couplings"), py::arg("drive") = DriveSpec{});

    m.def(
        "steady_state",
        [](const LindbladModel& model) {
            const auto ss = steady_state(model);
            return py::make_tuple(ss.rho.matrix(), ss.residual);
        },
        py::arg("model"), "Returns (rho, residual).");
    m.def(
        "propagate",
        [](const LindbladModel& model, const Matrix& rho0, const std::vector<double>& times) {
            return stack(propagate(model, DensityMatrix(rho0), times).states);
        },
        py::arg("model"), py::arg("rho0"), py::arg("times"), "States at `times`, shape (len(times), d, d).");

    m.def("field_amplitudes", &field_amplitudes, py::arg("layout"), py::arg("direction") = Direction::left);
    py::class_<FieldAmplitudes>(m, "FieldAmplitudes")
        .def_readonly("coefficients", &FieldAmplitudes::coefficients)
        .def_readonly("direction", &FieldAmplitudes::direction);
    m.def("intensity", &intensity, py::arg("rho"), py::arg("fields"));
    m.def("g2_zero", &g2_zero, py::arg("rho"), py::arg("fields"));
    m.def(
        "g2_tau",
        [](const LindbladModel& model, const Matrix& rho_ss, const FieldAmplitudes& f,
           const std::vector<double>& taus) { return g2_tau(model, rho_ss, f, taus).g2; },
        py::arg("model"), py::arg("rho_ss"), py::arg("fields"), py::arg("taus"));
    m.def("mandel_q", &mandel_q, py::arg("rho"), py::arg("fields"));
    m.def("concurrence", &concurrence, py::arg("rho"));
    m.def(
        "peak_concurrence",
        [](const LindbladModel& model, const Matrix& rho0, double t_max) {
            const auto p = peak_concurrence(model, DensityMatrix(rho0), t_max);
            return py::make_tuple(p.value, p.time);
        },
        py::arg("model"), py::arg("rho0"), py::arg("t_max") = 0.0, "Returns (max concurrence, time).");

    m.def("slh_deviation", &slh_deviation, py::arg("layout"), py::arg("drive") = DriveSpec{});
    m.def(
        "slh_model", [](const AtomLayout& layout, const DriveSpec& d) { return to_lindblad(build_network(layout, d)); },
        py::arg("layout"), py::arg("drive") = DriveSpec{});

    m.def("scenario_names", &runner::scenario_names);
    m.def(
        "run_scenario",
        [](const std::string& name, const std::vector<std::string>& overrides) {
            const auto r = runner::run_scenario(name, overrides);
            py::dict tables;
            for (const auto& t : r.tables) tables[py::str(t.name)] = table_dict(t);
            return py::make_tuple(tables, r.notes);
        },
        py::arg("name"), py::arg("overrides") = std::vector<std::string>{},
        "Returns ({table: {column: array}}, notes).");
    m.def(
        "evaluate",
        [](const std::string& config_json, const std::vector<std::string>& observables) {
            const auto cfg = runner::parse_config(config_json, "<python>");
            std::string errors;
            const auto values = runner::evaluate_point(cfg, observables, &errors);
            if (!errors.empty()) throw PhysicsError(errors);
            py::dict out;
            for (std::size_t k = 0; k < observables.size(); ++k) out[py::str(observables[k])] = values[k];
            return out;
        },
        py::arg("config_json"), py::arg("observables"), "Scalar observables for one JSON scenario config.");
}
