#include "lrinv/oracles.hpp"

#include <cmath>
#include <numbers>

#include "lrinv/errors.hpp"

namespace lrinv::oracle {

using namespace std::complex_literals;

namespace {

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

InvariantCoefficients unit(std::size_t k) {
    std::array<double, 10> a{};
    a[k] = 1.0;
    return InvariantCoefficients::from_array(a);
}

}  // namespace

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

Coupling random_coupling(Rng& rng) {
    PhysicalParams p;
    p.mu1 = uniform(rng, 0.5, 2.0);
    p.mu2 = uniform(rng, 0.5, 2.0);
    p.k1 = uniform(rng, 0.2, 3.0);
    p.k2 = uniform(rng, 0.2, 3.0);
    p.alpha01 = uniform(rng, -1.0, 1.0);
    p.alpha02 = uniform(rng, -1.0, 1.0);
    p.e = 1.0;
    return derive_params(p, 0.0).coupling();
}

InvariantCoefficients random_invariant(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat4 a = Mat4::Identity();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) += 0.4 * g(rng);
    return from_quadratic_form(QuadraticForm(a * a.transpose() + 0.3 * Mat4::Identity()));
}

InvariantCoefficients random_decoupled_invariant(Rng& rng) {
    InvariantCoefficients c = random_invariant(rng);
    c.u12 = c.v12 = c.w21 = c.w12 = 0.0;
    return c;
}

PhysicalParams random_smooth_schedule(Rng& rng) {
    auto sine = [&](double lo, double hi, double rel) {
        const double off = uniform(rng, lo, hi);
        return ParamSchedule::sinusoid(off, uniform(rng, -rel, rel) * off, uniform(rng, 0.1, 1.0),
                                       uniform(rng, 0.0, 2.0 * std::numbers::pi));
    };
    PhysicalParams p;
    p.mu1 = sine(0.8, 1.5, 0.2);
    p.mu2 = sine(0.8, 1.5, 0.2);
    p.k1 = sine(0.5, 2.0, 0.3);
    p.k2 = sine(0.5, 2.0, 0.3);
    p.alpha01 = sine(-0.8, 0.8, 0.5);
    p.alpha02 = ParamSchedule(ParamSchedule::Polynomial{
        {uniform(rng, -0.5, 0.5), uniform(rng, -0.02, 0.02), uniform(rng, -5e-4, 5e-4)}});
    p.e = 1.0;
    return p;
}

std::vector<CommutatorRow> commutator_table(const Coupling& k, int cutoff) {
    static const std::array<const char*, 10> ops = {"x1^2",        "x2^2",         "p1^2",       "p2^2",
                                                    "{x1,p1}",     "{x2,p2}",      "2 x1 x2",    "2 p1 p2",
                                                    "2 p1 x2",     "2 x1 p2"};
    const Mat4 h2 = 2.0 * hamiltonian_matrix(k).matrix();
    const CoefficientMatrices exact = coefficient_matrices(k, 2.0);
    const CoefficientMatrices printed = coefficient_matrices(k, 1.0);
    std::vector<CommutatorRow> rows;
    for (std::size_t i = 0; i < 10; ++i) {
        const InvariantCoefficients e = unit(i);
        // O_i = X^T E X = (1/2) X^T (2E) X
        const fock::CommutatorFit fit = fock::commutator_check(h2, 2.0 * to_quadratic_form(e).matrix(), cutoff);
        CommutatorRow r;
        r.op = ops[i];
        r.fitted = from_quadratic_form(QuadraticForm(0.5 * fit.g)).to_array();
        r.expected = rhs(e, exact).to_array();
        r.printed = rhs(e, printed).to_array();
        r.fit_residual = fit.fit_residual;
        r.constant = fit.constant;
        r.deviation = r.printed_deviation = 0.0;
        for (std::size_t j = 0; j < 10; ++j) {
            r.deviation = std::max(r.deviation, std::abs(r.fitted[j] - r.expected[j]));
            r.printed_deviation = std::max(r.printed_deviation, std::abs(r.fitted[j] - r.printed[j]));
        }
        rows.push_back(r);
    }
    return rows;
}

AnnihilationReport annihilation_check(const SpectralDecomposition& dec, int cutoff) {
    const GaussianState g = ground_state(dec);
    for (int n = cutoff;; n = kEscalatedCutoff) {
        const fock::Vec psi = fock::gaussian_to_fock(g.lambda, g.n0, n);
        const double edge = fock::edge_population(psi, n);
        if (edge > kEdgeTol && n < kEscalatedCutoff) continue;
        const fock::SpMat a1 = fock::represent_linear(dec.chi_l1, n).matrix;
        const fock::SpMat a2 = fock::represent_linear(dec.chi_l2, n).matrix;
        return {(a1 * psi).norm(), (a2 * psi).norm(), psi.norm(), n, edge};
    }
}

namespace {

// Gauge-fixed ground state of the invariant on the Fock basis, raised to |n1, n2>.
fock::Vec fock_eigenstate(const InvariantCoefficients& c, const SpectralDecomposition& dec, int n1, int n2,
                          int cutoff) {
    const auto op = fock::represent_quadratic(to_quadratic_form(c).matrix(), cutoff);
    const auto ep = fock::diagonalize(op);
    fock::Vec v = fock::gauge_fix_origin(ep.vectors.col(0), cutoff);
    const fock::SpMat c1 = fock::represent_linear(dec.chi_l1.conjugate(), cutoff).matrix;
    const fock::SpMat c2 = fock::represent_linear(dec.chi_l2.conjugate(), cutoff).matrix;
    for (int k = 0; k < n1; ++k) v = c1 * v;
    for (int k = 0; k < n2; ++k) v = c2 * v;
    return v / v.norm();
}

}  // namespace

LrPhaseReport lr_phase_check(const HamiltonianModel& model, double t0, double t1, int steps, int checkpoints,
                             int cutoff, const IntegratorOptions& integ, int n1, int n2) {
    LrPhaseReport rep;
    if (steps < 2 || checkpoints < 1 || steps % checkpoints != 0)
        fail(ErrorKind::Domain, "steps must be a positive multiple of checkpoints");
    PipelineOptions po;
    po.times = linspace(t0, t1, std::size_t(steps) + 1);
    po.integrator = integ;
    po.phase_states = {{n1, n2}};
    const PipelineResult pr = run_pipeline(model, po);
    for (const auto& s : pr.samples) {
        if (!s.tilde.stable) {
            rep.skipped = true;
            rep.reason = "Hamiltonian unstable (sigma~2 imaginary) at t = " + std::to_string(s.inv.t);
            return rep;
        }
    }
    if (!pr.all_physical()) {
        rep.skipped = true;
        for (const auto& s : pr.samples)
            if (!s.physical) {
                rep.reason = "invariant not positive definite at t = " + std::to_string(s.inv.t) + ": " + s.failure;
                break;
            }
        return rep;
    }
    const PhaseTrajectory& ph = pr.phases.front();
    for (const auto& s : ph.samples) rep.max_geometric_imag = std::max(rep.max_geometric_imag, std::abs(s.geometric_imag));

    fock::Vec psi = fock_eigenstate(pr.samples.front().inv.c, pr.samples.front().dec, n1, n2, cutoff);
    auto h_of_t = [&model](double t) { return model.hamiltonian(t); };
    const int per = steps / checkpoints;
    for (int cp = 1; cp <= checkpoints; ++cp) {
        const std::size_t i0 = std::size_t((cp - 1) * per), i1 = std::size_t(cp * per);
        psi = fock::propagate(h_of_t, psi, po.times[i0], po.times[i1], per, cutoff);
        const auto& s = pr.samples[i1];
        const fock::Vec phi = fock_eigenstate(s.inv.c, s.dec, n1, n2, cutoff);
        const cplx ov = phi.dot(psi);
        LrCheckpoint c;
        c.t = po.times[i1];
        c.fidelity = std::norm(ov) / psi.squaredNorm();
        c.fock_phase = std::arg(ov);
        c.lr_phase = ph.theta(i1);
        c.phase_error = std::abs(wrap_angle(c.fock_phase - c.lr_phase));
        rep.min_fidelity = std::min(rep.min_fidelity, c.fidelity);
        rep.max_phase_error = std::max(rep.max_phase_error, c.phase_error);
        rep.checkpoints.push_back(c);
    }
    return rep;
}

SimonSweep simon_vs_ppt(Rng& rng, int draws) {
    SimonSweep s;
    for (int i = 0; i < draws; ++i) {
        const InvariantCoefficients c = i % 10 == 0 ? random_decoupled_invariant(rng) : random_invariant(rng);
        const GaussianState g = ground_state(decompose(c));
        const SimonInvariants si = simon_criterion(covariance(g));
        ++s.draws;
        if (si.inequality_holds != si.ppt_holds) ++s.disagreements;
        if (si.separable) ++s.separable;
    }
    return s;
}

}  // namespace lrinv::oracle
