#include <doctest.h>

#include <cmath>
#include <random>

#include "lrinv/errors.hpp"
#include "lrinv/model.hpp"

using namespace lrinv;

TEST_CASE("derived couplings for a worked parameter set") {
    PhysicalParams p;
    p.mu1 = 1.0;
    p.mu2 = 2.0;
    p.k1 = 1.0;
    p.k2 = 3.0;
    p.alpha01 = 1.0;
    p.alpha02 = 2.0;
    p.e = 1.0;
    const DerivedParams d = derive_params(p, 0.0);
    CHECK(d.nu1 == doctest::Approx(0.5));
    CHECK(d.nu2 == doctest::Approx(0.5));
    CHECK(d.alpha1 == doctest::Approx(3.0));
    CHECK(d.alpha2 == doctest::Approx(4.0));
    CHECK(d.coupling().k1() == doctest::Approx(1.0));
    CHECK(d.coupling().k2() == doctest::Approx(3.0));
}

TEST_CASE("zero field decouples the modes") {
    PhysicalParams p;
    p.mu1 = 2.0;
    p.k1 = 0.5;
    const Mat4 h = hamiltonian_matrix(p, 0.0).matrix();
    Mat4 want = Mat4::Zero();
    want.diagonal() << 0.25, 0.25, 0.5, 0.5;
    CHECK((h - want).norm() < 1e-15);
}

TEST_CASE("Hamiltonian matrix layout") {
    const Coupling c{1.5, 0.7, 2.0, 3.0, 0.3, -0.4};
    const Mat4 h = hamiltonian_matrix(c).matrix();
    CHECK(h(0, 0) == doctest::Approx(1.0));
    CHECK(h(1, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(h(2, 2) == doctest::Approx(1.5));
    CHECK(h(3, 3) == doctest::Approx(1.0 / 1.4));
    CHECK(h(0, 3) == doctest::Approx(0.4));
    CHECK(h(1, 2) == doctest::Approx(0.3));
    CHECK(h(0, 2) == 0.0);
    CHECK(h(1, 3) == 0.0);
    CHECK((h - h.transpose()).norm() == 0.0);
}

TEST_CASE("non-positive mass is rejected") {
    PhysicalParams p;
    p.mu1 = ParamSchedule::sinusoid(0.5, 1.0, 1.0);
    CHECK_NOTHROW(derive_params(p, 0.0));
    try {
        derive_params(p, -std::acos(-1.0) / 2.0);
        FAIL("expected a positivity error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Positivity);
    }
}

TEST_CASE("schedules: analytic derivatives and domains") {
    const auto s = ParamSchedule::sinusoid(1.0, 0.3, 2.0, 0.1);
    for (double t : {0.0, 0.7, 3.1}) {
        const double h = 1e-6;
        CHECK(s.derivative(t) == doctest::Approx((s(t + h) - s(t - h)) / (2 * h)).epsilon(1e-7));
    }
    const ParamSchedule poly(ParamSchedule::Polynomial{{1.0, -2.0, 0.5}}, TimeDomain{0.0, 2.0});
    CHECK(poly(2.0) == doctest::Approx(-1.0));
    CHECK(poly.derivative(1.0) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(poly(2.5), Error);
    const ParamSchedule ex(ParamSchedule::Exponential{1.0, 2.0, -0.5});
    CHECK(ex(2.0) == doctest::Approx(1.0 + 2.0 * std::exp(-1.0)));
}

TEST_CASE("tabulated schedule reproduces smooth data") {
    std::vector<double> t, y;
    for (int i = 0; i <= 200; ++i) {
        t.push_back(0.05 * i);
        y.push_back(std::sin(t.back()));
    }
    const ParamSchedule s(ParamSchedule::Tabulated{t, y});
    CHECK(s.domain().t0 == 0.0);
    CHECK(s.domain().t1 == doctest::Approx(10.0));
    for (double x : {0.123, 4.56, 9.87}) {
        CHECK(std::abs(s(x) - std::sin(x)) < 1e-4);
        CHECK(std::abs(s.derivative(x) - std::cos(x)) < 1e-3);
    }
    CHECK_THROWS_AS(s(10.5), Error);
    CHECK_THROWS_AS(ParamSchedule(ParamSchedule::Tabulated{{0, 1, 2}, {0, 1, 2}}), Error);
}

TEST_CASE("noncommutative map: Bopp route equals the physical coupling") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.3, 2.0), s(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        NCParams nc;
        nc.theta = s(rng);
        nc.eta = s(rng);
        nc.m1 = u(rng);
        nc.m2 = u(rng);
        nc.omega1 = u(rng);
        nc.omega2 = u(rng);
        const Mat4 bopp = nc_hamiltonian_matrix(nc, 0.0).matrix();
        const Mat4 phys = hamiltonian_matrix(nc_to_physical(nc, 0.0)).matrix();
        CHECK((bopp - phys).cwiseAbs().maxCoeff() < 1e-13);

        // the constant translation reproduces the same Hamiltonian through derive_params
        const std::vector<double> times{0.0, 1.0};
        const PhysicalParams p = to_physical_params(nc, times);
        CHECK((hamiltonian_matrix(p, 0.5).matrix() - phys).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("noncommutative map: theta = eta = 0 is the ordinary oscillator") {
    NCParams nc;
    nc.m1 = 2.0;
    nc.omega1 = 1.5;
    const Coupling c = nc_to_physical(nc, 0.0);
    CHECK(c.mu1 == doctest::Approx(2.0));
    CHECK(c.alpha1 == doctest::Approx(2.0 * 2.25));
    CHECK(c.nu1 == 0.0);
    CHECK(c.nu2 == 0.0);
    CHECK(nc.hbar_e() == 1.0);
    CHECK(bopp_shift_map(nc).isIdentity());
}

TEST_CASE("time-dependent NC schedules are tabulated") {
    NCParams nc;
    nc.theta = 0.2;
    nc.eta = -0.1;
    nc.omega1 = ParamSchedule::sinusoid(1.0, 0.1, 0.5);
    const auto times = std::vector<double>{0, 0.5, 1, 1.5, 2, 2.5, 3};
    const PhysicalParams p = to_physical_params(nc, times);
    CHECK(std::holds_alternative<ParamSchedule::Tabulated>(p.k1.form()));
    for (double t : times)
        CHECK((hamiltonian_matrix(p, t).matrix() - nc_hamiltonian_matrix(nc, t).matrix()).cwiseAbs().maxCoeff() <
              1e-12);
    CHECK_THROWS_AS(to_physical_params(nc, std::vector<double>{0, 1}), Error);
}

TEST_CASE("model reports static schedules") {
    CHECK(HamiltonianModel(PhysicalParams{}).is_static());
    PhysicalParams p;
    p.k2 = ParamSchedule::sinusoid(1.0, 0.2, 1.0);
    const HamiltonianModel m(p);
    CHECK_FALSE(m.is_static());
    CHECK_FALSE(m.is_noncommutative());
    CHECK(HamiltonianModel(NCParams{}).is_noncommutative());
}
