#include <doctest.h>

#include <random>

#include "lrinv/errors.hpp"
#include "lrinv/invariant.hpp"
#include "lrinv/spectral.hpp"

using namespace lrinv;

namespace {

InvariantCoefficients unit(int k) {
    std::array<double, 10> a{};
    a[k] = 1.0;
    return InvariantCoefficients::from_array(a);
}

InvariantCoefficients random_pd(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Mat4 a = Mat4::Identity();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) += 0.3 * g(rng);
    return from_quadratic_form(QuadraticForm(a * a.transpose() + 0.5 * Mat4::Identity()));
}

Coupling random_coupling(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.5, 2.0), s(-1.0, 1.0);
    return {u(rng), u(rng), u(rng), u(rng), s(rng), s(rng)};
}

}  // namespace

// Single-mode commutators worked by hand with [x, p] = i and H = a x^2/2 + p^2/(2 mu):
//   (1/i)[H, x^2] = -{x,p}/mu,  (1/i)[H, p^2] = a {x,p},  (1/i)[H, {x,p}] = 2 a x^2 - 2 p^2/mu.
TEST_CASE("decoupled commutators match hand calculation") {
    const Coupling k{2.0, 0.5, 3.0, 1.5, 0.0, 0.0};
    const auto d_u11 = rhs(unit(0), k);
    CHECK(d_u11.w11 == doctest::Approx(-0.5));
    CHECK(d_u11.max_abs() == doctest::Approx(0.5));
    const auto d_v11 = rhs(unit(2), k);
    CHECK(d_v11.w11 == doctest::Approx(3.0));
    const auto d_w11 = rhs(unit(4), k);
    CHECK(d_w11.u11 == doctest::Approx(6.0));
    CHECK(d_w11.v11 == doctest::Approx(-1.0));
    const auto d_w22 = rhs(unit(5), k);
    CHECK(d_w22.u22 == doctest::Approx(3.0));
    CHECK(d_w22.v22 == doctest::Approx(-4.0));
}

// With H containing nu1 p1 x2: (1/i)[nu1 (p1 x2 + x2 p1), x1^2] = -2 nu1 (x1 x2 + x2 x1),
// i.e. the coefficient of 2 x1 x2 is -2 nu1.
TEST_CASE("field coupling enters with the Hamiltonian weight") {
    const Coupling k{1.0, 1.0, 1.0, 1.0, 0.3, 0.0};
    CHECK(rhs(unit(0), k).u12 == doctest::Approx(-0.6));
    const auto printed = coefficient_matrices(k, 1.0);
    CHECK(rhs(unit(0), printed).u12 == doctest::Approx(-0.3));
}

TEST_CASE("quadratic form layout round trip") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int i = 0; i < 20; ++i) {
        std::array<double, 10> a;
        for (auto& x : a) x = g(rng);
        const auto c = InvariantCoefficients::from_array(a);
        CHECK(from_quadratic_form(to_quadratic_form(c)).to_array() == a);
    }
    const QuadraticForm f = to_quadratic_form(unit(9));  // w12 couples x1 and p2
    CHECK(f(0, 3) == 1.0);
    CHECK(f(3, 0) == 1.0);
    CHECK(f.matrix().cwiseAbs().sum() == 2.0);
}

TEST_CASE("grouped views") {
    std::mt19937_64 rng(5);
    const auto c = random_pd(rng);
    const auto back = InvariantCoefficients::from_groups(c.w(), c.u(), c.v());
    CHECK(back.to_array() == c.to_array());
    CHECK((c + c * -1.0).max_abs() == 0.0);
}

TEST_CASE("property: linear map equals the matrix bracket") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const Coupling k = random_coupling(rng);
        const auto c = random_pd(rng);
        const Mat4 fdot = bracket_derivative(to_quadratic_form(c).matrix(), hamiltonian_matrix(k).matrix());
        const auto viaf = from_quadratic_form(QuadraticForm(fdot));
        CHECK((rhs(c, k) + viaf * -1.0).max_abs() < 1e-12);
        CHECK(invariance_residual(c, rhs(c, k), hamiltonian_matrix(k)) < 1e-12);
    }
}

TEST_CASE("nu assembled from mu agrees with the direct layout") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10; ++i) {
        const auto m = coefficient_matrices(random_coupling(rng));
        CHECK((nu_from_mu(m.mu) - m.nu).norm() < 1e-15);
    }
}

TEST_CASE("Hamiltonian is a static invariant") {
    std::mt19937_64 rng(4);
    const Coupling k = random_coupling(rng);
    const QuadraticForm h = hamiltonian_matrix(k);
    const auto c = hamiltonian_coefficients(h);
    CHECK((to_quadratic_form(c).matrix() - h.matrix()).norm() < 1e-15);
    CHECK(rhs(c, k).max_abs() < 1e-14);
}

TEST_CASE("integration keeps the residual small and the spectrum fixed") {
    PhysicalParams p;
    p.mu1 = ParamSchedule::sinusoid(1.0, 0.1, 0.7);
    p.k1 = ParamSchedule::sinusoid(1.5, 0.3, 1.1);
    p.k2 = 2.0;
    p.alpha01 = ParamSchedule::sinusoid(0.3, 0.2, 0.4, 1.0);
    p.alpha02 = ParamSchedule(ParamSchedule::Polynomial{{0.2, 0.05}});
    const HamiltonianModel model(p);
    std::mt19937_64 rng(9);
    const auto c0 = random_pd(rng);
    const auto traj = integrate(c0, model, 0.0, 8.0, 81);
    REQUIRE(traj.size() == 81);
    const auto d0 = decompose(c0);
    for (const auto& s : traj) {
        CHECK(s.residual < 1e-8);
        const auto d = decompose(s.c);
        CHECK(d.sigma1 == doctest::Approx(d0.sigma1).epsilon(1e-8));
        CHECK(d.sigma2 == doctest::Approx(d0.sigma2).epsilon(1e-8));
    }
    // backward integration returns to the start
    const auto back = integrate(traj.back().c, model, 8.0, 0.0, 2);
    CHECK((back.back().c + c0 * -1.0).max_abs() < 1e-8);
}

TEST_CASE("propagator is symplectic and transports the invariant") {
    PhysicalParams p;
    p.k1 = ParamSchedule::sinusoid(1.0, 0.4, 0.9);
    p.alpha01 = 0.5;
    p.alpha02 = ParamSchedule::sinusoid(0.0, 0.5, 0.3);
    const HamiltonianModel model(p);
    const Mat4 s = symplectic_propagator(model, 0.0, 5.0);
    const Mat4 j = symplectic::mode_metric();
    CHECK((s * j * s.transpose() - j).norm() < 1e-9);
    const auto c0 = hamiltonian_coefficients(model.hamiltonian(0.0));
    const auto traj = integrate(c0, model, 0.0, 5.0, 2);
    const Mat4 f0 = to_quadratic_form(c0).matrix(), f1 = to_quadratic_form(traj.back().c).matrix();
    CHECK((s.transpose() * f1 * s - f0).norm() < 1e-8);
}

TEST_CASE("integration errors") {
    PhysicalParams p;
    p.k1 = ParamSchedule(ParamSchedule::Polynomial{{1.0}}, TimeDomain{0.0, 1.0});
    const HamiltonianModel model(p);
    const auto c0 = hamiltonian_coefficients(model.hamiltonian(0.0));
    CHECK_THROWS_AS(integrate(c0, model, 0.0, 2.0, 5), Error);
    const std::vector<double> bad{0.0, 0.5, 0.2};
    CHECK_THROWS_AS(integrate(c0, model, bad), Error);
}
