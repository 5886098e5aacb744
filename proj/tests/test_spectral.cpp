#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "wqed/layout.hpp"
#include "wqed/liouvillian.hpp"
#include "wqed/spectral.hpp"

using namespace wqed;
using testing::max_abs;

namespace {

const double kSqrt2 = std::sqrt(2.0);

CouplingSet two_atom_set(double delta12, double exchange12)
{
    CouplingSet cs;
    cs.lamb_shift = RealVector(2);
    cs.lamb_shift << delta12, 0.0;
    cs.exchange = RealMatrix::Zero(2, 2);
    cs.exchange(0, 1) = cs.exchange(1, 0) = exchange12;
    cs.decay = RealMatrix::Identity(2, 2);
    cs.bare_detuning = RealVector::Zero(2);
    return cs;
}

// Omega_+- = Omega0 <psi_+-| (s1^+ + s2^+) |gg>
DriveCouplings coupling_oracle(double delta12, double exchange12, double rabi)
{
    const auto pair = dressed_states(two_atom_set(delta12, exchange12));
    const auto s = testing::lowering(2, 0) + testing::lowering(2, 1);
    const Vector up = s.adjoint() * basis_ket(2, 0);
    return {rabi * pair.ket_plus().dot(up).real(), rabi * pair.ket_minus().dot(up).real()};
}

void check_rates_against_extraction(const CouplingSet& cs, double tol)
{
    const auto m = build_model(cs, DriveSpec{});
    const auto pair = dressed_states(cs);
    const auto q = transition_rates(cs);
    const Vector gg = basis_ket(2, 0);
    const Vector ee = basis_ket(2, 3);
    REQUIRE(std::abs(extract_rate(m, ee, pair.ket_plus()) - q.e_plus) < tol);
    REQUIRE(std::abs(extract_rate(m, ee, pair.ket_minus()) - q.e_minus) < tol);
    REQUIRE(std::abs(extract_rate(m, pair.ket_plus(), gg) - q.plus_g) < tol);
    REQUIRE(std::abs(extract_rate(m, pair.ket_minus(), gg) - q.minus_g) < tol);
}

} // namespace

TEST_CASE("small atoms: symmetric and antisymmetric dressed states")
{
    const auto pair = dressed_states(coupling_set(make_layout(Geometry::small, 0.4)));
    CHECK(pair.plus(0) == doctest::Approx(1 / kSqrt2));
    CHECK(pair.plus(1) == doctest::Approx(1 / kSqrt2));
    CHECK(pair.minus(0) == doctest::Approx(-1 / kSqrt2));
    CHECK(pair.minus(1) == doctest::Approx(1 / kSqrt2));
    // embedded kets: index 2 = |eg>, index 1 = |ge>
    CHECK(pair.ket_plus()(2).real() == doctest::Approx(1 / kSqrt2));
    CHECK(pair.ket_minus()(1).real() == doctest::Approx(1 / kSqrt2));
}

TEST_CASE("nested dressed states at theta = pi/2")
{
    const auto pair = dressed_states(coupling_set(make_layout(Geometry::nested, kPi / 2)));
    CHECK(pair.splitting == doctest::Approx(2 * kSqrt2));
    const Eigen::Vector2d plus = Eigen::Vector2d(-2 + 2 * kSqrt2, 2).normalized();
    const Eigen::Vector2d minus = Eigen::Vector2d(-2 - 2 * kSqrt2, 2).normalized();
    CHECK((pair.plus - plus).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((pair.minus - minus).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dressed states diagonalize the single-excitation block")
{
    for (auto g : {Geometry::nested, Geometry::braided, Geometry::separated, Geometry::small}) {
        for (int k = 0; k < 100; ++k) {
            const double theta = testing::uniform(0.01, kPi - 0.01);
            const auto cs = coupling_set(make_layout(g, theta));
            const auto pair = dressed_states(cs);
            const auto h = build_model(cs, DriveSpec{}).hamiltonian;
            const Vector p = pair.ket_plus();
            const Vector m = pair.ket_minus();
            REQUIRE(std::abs(p.norm() - 1.0) < 1e-12);
            REQUIRE(std::abs(m.norm() - 1.0) < 1e-12);
            REQUIRE(std::abs(p.dot(m)) < 1e-12);
            REQUIRE(std::abs(m.dot(h * p)) < 1e-12);
            REQUIRE(std::abs(pair.energy_plus - pair.energy_minus - pair.splitting) < 1e-12);
            // energies agree with a direct 2x2 eigen-solve
            Eigen::Matrix2d block;
            block << h(2, 2).real(), h(2, 1).real(), h(1, 2).real(), h(1, 1).real();
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
            REQUIRE(std::abs(es.eigenvalues()(1) - pair.energy_plus) < 1e-12);
            REQUIRE(std::abs(es.eigenvalues()(0) - pair.energy_minus) < 1e-12);
            REQUIRE(std::abs(pair.energy_excited - h(3, 3).real()) < 1e-12);
            REQUIRE(pair.energy_ground == 0.0);
        }
    }
}

TEST_CASE("nested splitting approaches 2 sqrt(10) theta")
{
    const double theta = 1e-3;
    const auto pair = dressed_states(coupling_set(make_layout(Geometry::nested, theta)));
    CHECK(std::abs(pair.splitting / (2 * std::sqrt(10.0) * theta) - 1.0) < 1e-3);
}

TEST_CASE("degenerate dressed states are rejected")
{
    CHECK_THROWS_AS(dressed_states(coupling_set(make_layout(Geometry::nested, kPi))), DegeneracyError);
    CHECK_THROWS_AS(dressed_states(coupling_set(single_atom())), InputError);
    // Delta_12 = 0 with a frequency offset is the 0+ limit, not an error
    const auto pair = dressed_states(two_atom_set(0.5, 0.0));
    CHECK(pair.splitting == doctest::Approx(0.5));
}

TEST_CASE("collective rates at theta = pi/2")
{
    const auto q = transition_rates(coupling_set(make_layout(Geometry::nested, kPi / 2)));
    CHECK(q.e_plus == doctest::Approx(2 - kSqrt2).epsilon(1e-12));
    CHECK(q.plus_g == doctest::Approx(2 - kSqrt2).epsilon(1e-12));
    CHECK(q.e_minus == doctest::Approx(2 + kSqrt2).epsilon(1e-12));
    CHECK(q.minus_g == doctest::Approx(2 + kSqrt2).epsilon(1e-12));
}

TEST_CASE("nested subradiant rate at theta = 0.01 pi")
{
    const auto q = transition_rates(coupling_set(make_layout(Geometry::nested, 0.01 * kPi)));
    CHECK(q.minus_g == doctest::Approx(0.2056).epsilon(1e-3));
}

TEST_CASE("rate sum rules and differences on a spacing grid")
{
    for (auto g : {Geometry::nested, Geometry::braided, Geometry::separated, Geometry::small}) {
        for (int k = 1; k < 200; ++k) {
            const double theta = kPi * k / 200.0;
            const auto cs = coupling_set(make_layout(g, theta));
            // separated atoms at theta = pi/2 have Delta_12 = delta_12 = 0
            if (std::abs(cs.exchange(0, 1)) < 1e-12 && std::abs(cs.lamb_shift_difference()) < 1e-12) {
                CHECK_THROWS_AS(transition_rates(cs), DegeneracyError);
                continue;
            }
            const auto q = transition_rates(cs);
            const double total = cs.decay(0, 0) + cs.decay(1, 1);
            REQUIRE(std::abs(q.e_plus + q.e_minus - total) < 1e-10);
            REQUIRE(std::abs(q.plus_g + q.minus_g - total) < 1e-10);
            REQUIRE(std::abs((q.e_plus - q.minus_g) - q.xi / q.splitting) < 1e-10);
            REQUIRE(std::abs((q.plus_g - q.e_minus) - q.xi / q.splitting) < 1e-10);
        }
    }
}

TEST_CASE("small atoms: cascade rates equal decay rates")
{
    for (int k = 1; k < 100; ++k) {
        const double theta = kPi * k / 100.0;
        const auto cs = coupling_set(make_layout(Geometry::small, theta));
        const auto q = transition_rates(cs);
        const double sgn = cs.exchange(0, 1) > 0 ? 1.0 : -1.0;
        REQUIRE(std::abs(q.e_plus - q.plus_g) < 1e-12);
        REQUIRE(std::abs(q.e_minus - q.minus_g) < 1e-12);
        REQUIRE(std::abs(q.plus_g - (1.0 + cs.decay(0, 1) * sgn)) < 1e-12);
        REQUIRE(std::abs(q.minus_g - (1.0 - cs.decay(0, 1) * sgn)) < 1e-12);
    }
}

TEST_CASE("closed-form rates equal Liouvillian extraction")
{
    for (auto g : {Geometry::nested, Geometry::braided, Geometry::separated, Geometry::small})
        for (int k = 0; k < 100; ++k)
            check_rates_against_extraction(coupling_set(make_layout(g, testing::uniform(0.005, kPi - 0.005))),
                                           1e-10);
}

TEST_CASE("extract_rate special cases")
{
    const auto cs = coupling_set(make_layout(Geometry::braided, 0.8));
    const auto m = build_model(cs, DriveSpec{});
    const Vector gg = basis_ket(2, 0);
    const Vector ee = basis_ket(2, 3);
    CHECK(std::abs(extract_rate(m, gg, gg)) < 1e-15);
    CHECK(std::abs(extract_rate(m, ee, gg)) < 1e-15);
    const auto pair = dressed_states(coupling_set(make_layout(Geometry::nested, kPi / 2)));
    const auto mn = build_model(coupling_set(make_layout(Geometry::nested, kPi / 2)), DriveSpec{});
    CHECK(extract_rate(mn, pair.ket_minus(), gg) == doctest::Approx(2 + kSqrt2).epsilon(1e-10));

    DriveSpec d;
    d.rabi = 1.0;
    CHECK_THROWS_AS(extract_rate(build_model(cs, d), ee, gg), PhysicsError);
    CHECK_THROWS_AS(extract_rate(m, 2.0 * ee, gg), InputError);
}

TEST_CASE("drive couplings")
{
    const auto zero = drive_couplings(0.0, 0.7, 1.3);
    CHECK(zero.plus == doctest::Approx(kSqrt2 * 1.3));
    CHECK(std::abs(zero.minus) < 1e-15);

    const auto nested = drive_couplings(-2.0, 1.0, 1.0);
    CHECK(nested.plus == doctest::Approx(1.3066).epsilon(1e-4));
    CHECK(nested.minus == doctest::Approx(-0.5412).epsilon(1e-4));

    const auto far = drive_couplings(1e6, 1.0, 1.0);
    CHECK(std::abs(far.plus) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(std::abs(far.minus) == doctest::Approx(1.0).epsilon(1e-5));

    CHECK_THROWS_AS(drive_couplings(0.0, 0.0, 1.0), DegeneracyError);
}

TEST_CASE("drive couplings match dressed-state amplitudes and complete to 2 Omega0^2")
{
    for (int k = 0; k < 500; ++k) {
        const double d = testing::uniform(-20.0, 20.0);
        const double x = testing::uniform(-5.0, 5.0);
        const double rabi = testing::uniform(0.0, 4.0);
        const auto c = drive_couplings(d, x, rabi);
        const auto o = coupling_oracle(d, x, rabi);
        REQUIRE(std::abs(c.plus - o.plus) < 1e-10);
        REQUIRE(std::abs(c.minus - o.minus) < 1e-10);
        REQUIRE(std::abs(c.plus * c.plus + c.minus * c.minus - 2 * rabi * rabi) < 1e-10);
    }
}

TEST_CASE("single-atom Liouvillian spectrum")
{
    const Vector ev = liouvillian_spectrum(superoperator(build_model(coupling_set(single_atom(1.0)), DriveSpec{})));
    REQUIRE(ev.size() == 4);
    CHECK(std::abs(ev(0)) < 1e-12);
    CHECK(std::abs(ev(1) - cplx(-0.5)) < 1e-12);
    CHECK(std::abs(ev(2) - cplx(-0.5)) < 1e-12);
    CHECK(std::abs(ev(3) - cplx(-1.0)) < 1e-12);
    CHECK(slowest_decay_rate(ev) == doctest::Approx(0.5));
}

TEST_CASE("subradiant gap and Dicke dark mode")
{
    const auto cs = coupling_set(make_layout(Geometry::nested, 0.01 * kPi));
    const double gap = slowest_decay_rate(liouvillian_spectrum(superoperator(build_model(cs, DriveSpec{}))));
    CHECK(gap > 0.0);
    CHECK(1.0 / gap > 100.0);

    const auto dicke = build_model(coupling_set(make_layout(Geometry::small, 0.0)), DriveSpec{});
    CHECK(slowest_decay_rate(liouvillian_spectrum(superoperator(dicke))) == 0.0);
}

TEST_CASE("lifetime report lists three candidates")
{
    const auto cs = coupling_set(make_layout(Geometry::nested, 0.01 * kPi));
    DriveSpec d;
    d.rabi = 1.5;
    const auto r = lifetime_report(cs, d);
    CHECK(r.rate_minus_g == doctest::Approx(1.0 / transition_rates(cs).minus_g));
    CHECK(r.undriven_slowest > 100.0);
    CHECK(r.driven_slowest > 100.0);
    CHECK(r.driven_slowest < r.undriven_slowest);
}
