#include "lrinv/phases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lrinv/errors.hpp"

namespace lrinv {

using namespace std::complex_literals;

std::vector<SpectrumEntry> spectrum(double s1, double s2, int nmax) {
    if (!(s1 > 0.0 && s2 > 0.0)) fail(ErrorKind::Regime, "spectrum needs real positive sigma_j");
    std::vector<SpectrumEntry> out;
    for (int n1 = 0; n1 <= nmax; ++n1)
        for (int n2 = 0; n2 <= nmax; ++n2) out.push_back({n1, n2, (n1 + 0.5) * s1 + (n2 + 0.5) * s2});
    std::stable_sort(out.begin(), out.end(),
                     [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.energy < b.energy; });
    return out;
}

std::vector<SpectrumEntry> spectrum(const SpectralDecomposition& dec, int nmax) {
    return spectrum(dec.sigma1, dec.sigma2, nmax);
}

double TildeSpectral::route_mismatch() const {
    const double a = std::abs(tilde_delta - tilde_delta_matrix) / std::max(1.0, std::abs(tilde_delta));
    const double b =
        std::abs(tilde_delta_omega - tilde_delta_omega_matrix) / std::max(1.0, std::abs(tilde_delta_omega));
    return std::max({a, b, root_mismatch});
}

TildeSpectral tilde_spectral(const Coupling& k) {
    const double m1 = k.mu1, m2 = k.mu2, a1 = k.alpha1, a2 = k.alpha2, n1 = k.nu1, n2 = k.nu2;
    TildeSpectral ts;
    ts.tilde_delta = -a1 / (4.0 * m1) - a2 / (4.0 * m2) - 2.0 * n1 * n2;
    ts.tilde_delta_omega = a1 * a2 / (16.0 * m1 * m2) - n2 * n2 * a2 / (4.0 * m1) - n1 * n1 * a1 / (4.0 * m2) +
                           n1 * n1 * n2 * n2;
    const double d = a1 / (4.0 * m1) - a2 / (4.0 * m2);
    ts.discriminant = d * d + (a1 * n1 + a2 * n2) * (n1 / m2 + n2 / m1);
    ts.stability_product = (a2 - 4.0 * m1 * n1 * n1) * (a1 - 4.0 * m2 * n2 * n2);

    const cplx root = std::sqrt(cplx(ts.discriminant, 0.0));
    const cplx s1sq = 0.5 * (-ts.tilde_delta + root);
    const cplx st1 = std::sqrt(s1sq);
    // sigma~2^2 from the root product keeps its sign exactly that of D_O~
    const cplx s2sq = std::abs(s1sq) > 0.0 ? ts.tilde_delta_omega / s1sq : 0.5 * (-ts.tilde_delta - root);
    const cplx st2 = std::sqrt(s2sq);
    ts.sigma_t1 = st1.real();
    ts.sigma_t2 = st2;
    ts.stable = ts.discriminant >= 0.0 && s1sq.real() >= 0.0 && s2sq.real() >= 0.0 &&
                std::abs(s2sq.imag()) == 0.0;

    const CMat4 m = symplectic::SigmaY() * hamiltonian_matrix(k).matrix().cast<cplx>();
    ts.tilde_delta_matrix = (-0.5 * (m * m).trace()).real();
    ts.tilde_delta_omega_matrix = m.determinant().real();
    Eigen::ComplexEigenSolver<CMat4> es(m, false);
    const std::array<cplx, 4> closed{st1, -st1, st2, -st2};
    double worst = 0.0;
    for (const cplx& r : closed) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i) best = std::min(best, std::abs(es.eigenvalues()(i) - r));
        worst = std::max(worst, best);
    }
    ts.root_mismatch = worst / std::max(1.0, std::abs(st1));
    return ts;
}

TildeSpectral tilde_spectral(const PhysicalParams& p, double t) {
    return tilde_spectral(derive_params(p, t).coupling());
}

double dynamical_phase_rate(const TildeSpectral& ts, int n1, int n2) {
    if (!ts.stable) {
        std::ostringstream os;
        os.precision(17);
        os << "unstable regime: (alpha2 - 4 mu1 nu1^2)(alpha1 - 4 mu2 nu2^2) = " << ts.stability_product
           << ", sigma~2 = " << ts.sigma_t2;
        fail(ErrorKind::Regime, os.str());
    }
    return (2 * n1 + 1) * ts.sigma_t1 + (2 * n2 + 1) * ts.sigma_t2.real();
}

double dynamical_phase_rate_ground_alt(const TildeSpectral& ts) {
    return std::sqrt(-ts.tilde_delta + 2.0 * std::sqrt(ts.tilde_delta_omega));
}

Mat4 fock_state_covariance(const SpectralDecomposition& dec, int n1, int n2) {
    const CMat4& q = dec.Q;
    const double occ[2] = {n1 + 0.5, n2 + 0.5};
    Mat4 v = Mat4::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            cplx s = 0.0;
            for (int k = 0; k < 2; ++k)
                s += occ[k] * (q(a, 2 * k) * q(b, 2 * k + 1) + q(a, 2 * k + 1) * q(b, 2 * k));
            v(a, b) = s.real();
        }
    return v;
}

double energy_expectation(const QuadraticForm& h, const SpectralDecomposition& dec, int n1, int n2) {
    return (h.matrix() * fock_state_covariance(dec, n1, n2)).trace();
}

GeometricRate geometric_phase_rate(const GaussianState& g, const CMat2& lambda_dot, double n0_dot) {
    const Mat2 xx = 0.5 * g.lambda.real().inverse();
    const CMat2 ld = 0.5 * (lambda_dot + lambda_dot.transpose());
    const cplx contraction = (ld.array() * xx.cast<cplx>().array()).sum();
    const cplx inner = n0_dot / g.n0 - 0.5 * contraction;  // <psi|d/dt psi>
    const cplx r = 1.0i * inner;
    return {r.real(), r.imag()};
}

double excited_geometric_increment(const SpectralDecomposition& dec, const CRow4& d1, const CRow4& d2, int n1,
                                   int n2) {
    const CMat4 j = symplectic::mode_metric().cast<cplx>();
    const cplx c1 = (dec.chi_l1 * j * d1.adjoint())(0, 0);
    const cplx c2 = (dec.chi_l2 * j * d2.adjoint())(0, 0);
    return -(n1 * c1.real() + n2 * c2.real());
}

namespace {

template <class Get, class T>
T derivative_at(const std::vector<InstantState>& s, std::size_t i, Get get, T zero) {
    const std::size_t n = s.size();
    if (n < 2) return zero;
    if (n == 2) return (get(s[1]) - get(s[0])) / (s[1].t - s[0].t);
    if (i == 0) {
        const double h = s[1].t - s[0].t;
        return (-3.0 * get(s[0]) + 4.0 * get(s[1]) - get(s[2])) / (2.0 * h);
    }
    if (i == n - 1) {
        const double h = s[n - 1].t - s[n - 2].t;
        return (3.0 * get(s[n - 1]) - 4.0 * get(s[n - 2]) + get(s[n - 3])) / (2.0 * h);
    }
    return (get(s[i + 1]) - get(s[i - 1])) / (s[i + 1].t - s[i - 1].t);
}

}  // namespace

PhaseTrajectory integrate_phases(const std::vector<InstantState>& states, int n1, int n2) {
    PhaseTrajectory ph;
    ph.n1 = n1;
    ph.n2 = n2;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double printed_prev = nan;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const InstantState& s = states[i];
        const CMat2 ldot = derivative_at(states, i, [](const InstantState& x) -> CMat2 { return x.ground.lambda; },
                                         CMat2(CMat2::Zero()));
        const double ndot = derivative_at(states, i, [](const InstantState& x) { return x.ground.n0; }, 0.0);
        const GeometricRate g = geometric_phase_rate(s.ground, ldot, ndot);
        double grate = g.rate;
        if (n1 > 0 || n2 > 0) {
            const CRow4 d1 = derivative_at(states, i, [](const InstantState& x) -> CRow4 { return x.dec.chi_l1; },
                                           CRow4(CRow4::Zero()));
            const CRow4 d2 = derivative_at(states, i, [](const InstantState& x) -> CRow4 { return x.dec.chi_l2; },
                                           CRow4(CRow4::Zero()));
            grate += excited_geometric_increment(s.dec, d1, d2, n1, n2);
        }
        PhaseSample p;
        p.t = s.t;
        p.energy = (n1 + 0.5) * s.dec.sigma1 + (n2 + 0.5) * s.dec.sigma2;
        p.geometric_rate = grate;
        p.geometric_imag = g.imag_part;
        p.dynamical_rate = -energy_expectation(s.hamiltonian, s.dec, n1, n2);
        const TildeSpectral ts = tilde_spectral(s.coupling);
        const double printed_rate = ts.stable ? -dynamical_phase_rate(ts, n1, n2) : nan;
        if (i == 0) {
            p.theta_g = p.theta_d = 0.0;
            p.theta_d_printed = ts.stable ? 0.0 : nan;
        } else {
            const PhaseSample& q = ph.samples.back();
            const double h = s.t - q.t;
            p.theta_g = q.theta_g + 0.5 * h * (q.geometric_rate + p.geometric_rate);
            p.theta_d = q.theta_d + 0.5 * h * (q.dynamical_rate + p.dynamical_rate);
            p.theta_d_printed = q.theta_d_printed + 0.5 * h * (printed_prev + printed_rate);
        }
        printed_prev = printed_rate;
        ph.samples.push_back(p);
    }
    return ph;
}

double berry_phase_overlap(const std::vector<GaussianState>& path) {
    double theta = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) theta -= std::arg(gaussian_overlap(path[k], path[k + 1]));
    return theta;
}

TdseSolution tdse_solution(const std::vector<InstantState>& states, const PhaseTrajectory& ph, double t) {
    const auto& s = ph.samples;
    if (s.empty() || states.size() != s.size()) fail(ErrorKind::Domain, "phase trajectory is empty or mismatched");
    const double lo = std::min(s.front().t, s.back().t), hi = std::max(s.front().t, s.back().t);
    if (t < lo || t > hi) {
        std::ostringstream os;
        os << "t = " << t << " outside the integrated phase window [" << lo << ", " << hi << "]";
        fail(ErrorKind::Domain, os.str());
    }
    std::size_t i = 0;
    while (i + 2 < s.size() && (s[i + 1].t - t) * (s[i + 1].t - s[0].t) <= 0.0) ++i;
    if (s.size() == 1) i = 0;
    const std::size_t j = std::min(i + 1, s.size() - 1);
    const double span = s[j].t - s[i].t;
    const double w = span == 0.0 ? 0.0 : (t - s[i].t) / span;
    auto lerp = [w](double a, double b) { return a + w * (b - a); };

    TdseSolution r;
    r.n1 = ph.n1;
    r.n2 = ph.n2;
    r.t = t;
    r.energy = lerp(s[i].energy, s[j].energy);
    r.theta_g = lerp(s[i].theta_g, s[j].theta_g);
    r.theta_d = lerp(s[i].theta_d, s[j].theta_d);
    r.theta = r.theta_g + r.theta_d;
    r.has_wavefunction = ph.n1 == 0 && ph.n2 == 0;
    const std::size_t near = w < 0.5 ? i : j;
    r.lambda = states[near].ground.lambda;
    r.n0 = states[near].ground.n0;
    return r;
}

}  // namespace lrinv
