#include <doctest.h>

#include <cmath>
#include <random>

#include "lrinv/errors.hpp"
#include "lrinv/pipeline.hpp"

using namespace lrinv;

TEST_CASE("spectrum ordering") {
    const auto s = spectrum(2.0, 1.0, 2);
    REQUIRE(s.size() == 9);
    CHECK(s[0].energy == doctest::Approx(1.5));
    CHECK(s[1].n1 == 0);
    CHECK(s[1].n2 == 1);
    // (0, 2) and (1, 0) are degenerate; ties go by (n1, n2)
    CHECK(s[2].n1 == 0);
    CHECK(s[2].n2 == 2);
    CHECK(s[3].n1 == 1);
    CHECK(s[3].n2 == 0);
    CHECK(s[2].energy == s[3].energy);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].energy <= s[i].energy);
}

// Sigma_y H for a decoupled mode has eigenvalues +-sqrt(alpha/mu)/2, half the oscillator frequency.
TEST_CASE("tilde spectrum of decoupled modes") {
    const Coupling k{1.0, 2.0, 4.0, 8.0, 0.0, 0.0};
    const TildeSpectral ts = tilde_spectral(k);
    CHECK(ts.stable);
    CHECK(ts.sigma_t1 == doctest::Approx(1.0));
    CHECK(ts.sigma_t2.real() == doctest::Approx(1.0));
    CHECK(ts.route_mismatch() < 1e-12);
    CHECK(dynamical_phase_rate(ts, 0, 0) == doctest::Approx(2.0));
    CHECK(dynamical_phase_rate(ts, 1, 0) == doctest::Approx(4.0));
}

TEST_CASE("property: stability flag follows the sign of the product") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.3, 2.0), s(-1.5, 1.5);
    for (int i = 0; i < 2000; ++i) {
        PhysicalParams p;
        p.mu1 = u(rng);
        p.mu2 = u(rng);
        p.k1 = s(rng);
        p.k2 = u(rng);
        p.alpha01 = s(rng);
        p.alpha02 = s(rng);
        const TildeSpectral ts = tilde_spectral(p, 0.0);
        if (std::abs(ts.stability_product) < 1e-9) continue;
        CHECK(ts.stable == (ts.stability_product > 0));
        CHECK(ts.tilde_delta_omega == doctest::Approx(ts.tilde_delta_omega_matrix).epsilon(1e-10));
        CHECK(ts.discriminant >= -1e-12);
        if (!ts.stable) {
            CHECK(ts.sigma_t2.real() == 0.0);
            CHECK(ts.sigma_t2.imag() > 0.0);
            CHECK_THROWS_AS(dynamical_phase_rate(ts, 0, 0), Error);
        }
    }
}

TEST_CASE("doubly inverted springs can make the discriminant negative") {
    // alpha1 = 1, alpha2 = 3, nu1 = 2, nu2 = -1 with unit masses
    const Coupling k{1.0, 1.0, 1.0, 3.0, 2.0, -1.0};
    CHECK(k.k1() < 0);
    CHECK(k.k2() < 0);
    CHECK(tilde_spectral(k).discriminant == doctest::Approx(-0.75));
}

TEST_CASE("static Hamiltonian invariant: no geometric phase, dynamical phase -E t") {
    const Coupling k{1.2, 0.8, 2.0, 1.3, 0.25, -0.15};
    PhysicalParams p;
    p.mu1 = k.mu1;
    p.mu2 = k.mu2;
    p.k1 = k.k1();
    p.k2 = k.k2();
    p.alpha01 = 2.0 * k.mu1 * k.nu1;
    p.alpha02 = 2.0 * k.mu2 * k.nu2;
    const HamiltonianModel model(p);
    PipelineOptions po;
    po.times = linspace(0.0, 5.0, 51);
    po.phase_states = {{0, 0}, {1, 0}, {1, 2}};
    const PipelineResult r = run_pipeline(model, po);
    REQUIRE(r.all_physical());
    const auto& dec = r.samples.front().dec;
    const QuadraticForm h = hamiltonian_matrix(k);
    for (const auto& ph : r.phases) {
        const double e = energy_expectation(h, dec, ph.n1, ph.n2);
        // the invariant is H/2, so its levels are half the energies
        CHECK(e == doctest::Approx(2.0 * ((ph.n1 + 0.5) * dec.sigma1 + (ph.n2 + 0.5) * dec.sigma2)));
        for (const auto& s : ph.samples) {
            CHECK(std::abs(s.theta_g) < 1e-9);
            CHECK(s.theta_d == doctest::Approx(-e * s.t).epsilon(1e-10));
            CHECK(s.theta_d_printed == doctest::Approx(s.theta_d).epsilon(1e-10));
        }
    }
}

TEST_CASE("geometric phase matches discrete Berry overlaps") {
    PhysicalParams p;
    p.mu1 = ParamSchedule::sinusoid(1.0, 0.15, 0.6);
    p.k1 = ParamSchedule::sinusoid(1.5, 0.4, 0.8);
    p.k2 = 2.0;
    p.alpha01 = ParamSchedule::sinusoid(0.5, 0.3, 0.5);
    p.alpha02 = 0.2;
    const HamiltonianModel model(p);
    PipelineOptions po;
    po.times = linspace(0.0, 6.0, 1201);
    const PipelineResult r = run_pipeline(model, po);
    REQUIRE(r.all_physical());
    std::vector<GaussianState> path;
    for (const auto& s : r.states) path.push_back(s.ground);
    const auto& ph = r.phases.front();
    CHECK(std::abs(ph.samples.back().theta_g) > 1e-3);
    CHECK(ph.samples.back().theta_g == doctest::Approx(berry_phase_overlap(path)).epsilon(1e-4));
    for (const auto& s : ph.samples) CHECK(std::abs(s.geometric_imag) < 1e-5);
}

TEST_CASE("TDSE solution interpolates the phase trajectory") {
    PhysicalParams p;
    p.k1 = ParamSchedule::sinusoid(1.0, 0.2, 1.0);
    const HamiltonianModel model(p);
    PipelineOptions po;
    po.times = linspace(0.0, 2.0, 21);
    const PipelineResult r = run_pipeline(model, po);
    REQUIRE(r.all_physical());
    const auto sol = tdse_solution(r.states, r.phases.front(), 1.0);
    CHECK(sol.theta == doctest::Approx(r.phases.front().theta(10)));
    CHECK(sol.has_wavefunction);
    CHECK_THROWS_AS(tdse_solution(r.states, r.phases.front(), 3.0), Error);
}
