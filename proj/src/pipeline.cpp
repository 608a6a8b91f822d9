#include "lrinv/pipeline.hpp"

#include <cmath>
#include <limits>

#include "lrinv/errors.hpp"

namespace lrinv {

bool PipelineResult::all_physical() const {
    for (const auto& s : samples)
        if (!s.physical) return false;
    return !samples.empty();
}

namespace {

void analyze(PipelineSample& s, const Coupling& k, const SpectralOptions& opts) {
    s.tilde = tilde_spectral(k);
    try {
        s.dec = decompose(s.inv.c, opts);
        s.residuals = verify_decomposition(s.inv.c, s.dec);
        s.ground = ground_state(s.dec);
        s.covariance = covariance(s.ground);
        s.symplectic = symplectic::symplectic_eigenvalues(s.covariance);
        s.simon = simon_criterion(s.covariance);
        s.ground_inequality = ground_state_inequality(s.ground);
        s.physical = true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Numerical) throw;
        s.physical = false;
        s.failure = std::string(to_string(e.kind())) + ": " + e.what();
        return;
    }
    try {
        const CRow4 c1 = left_eigenvector_closed_form(s.inv.c, s.dec.sigma1);
        const CRow4 c2 = left_eigenvector_closed_form(s.inv.c, s.dec.sigma2);
        s.closed_form_distance =
            std::max(projective_distance(c1, s.dec.chi_l1), projective_distance(c2, s.dec.chi_l2));
    } catch (const Error&) {
        s.closed_form_distance = std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

PipelineSample analyze_static(const Coupling& k, const SpectralOptions& opts) {
    PipelineSample s;
    const QuadraticForm h = hamiltonian_matrix(k);
    s.inv.t = 0.0;
    s.inv.c = hamiltonian_coefficients(h);
    s.inv.cdot = rhs(s.inv.c, k);
    s.inv.residual = invariance_residual(s.inv.c, s.inv.cdot, h);
    analyze(s, k, opts);
    return s;
}

PipelineResult run_pipeline(const HamiltonianModel& model, const PipelineOptions& opts) {
    if (opts.times.size() < 2) fail(ErrorKind::Domain, "pipeline needs at least two sample times");
    const double t0 = opts.times.front();
    const InvariantCoefficients c0 = opts.initial ? *opts.initial : hamiltonian_coefficients(model.hamiltonian(t0));

    PipelineResult r;
    const auto traj = integrate(c0, model, opts.times, opts.integrator);
    for (const auto& inv : traj) {
        PipelineSample s;
        s.inv = inv;
        analyze(s, model.coupling(inv.t), opts.spectral);
        r.samples.push_back(std::move(s));
    }

    const Mat4 s = symplectic_propagator(model, t0, opts.times.back(), opts.integrator);
    const Mat4 f0 = to_quadratic_form(traj.front().c).matrix();
    const Mat4 f1 = to_quadratic_form(traj.back().c).matrix();
    r.propagator_defect = (s.transpose() * f1 * s - f0).cwiseAbs().maxCoeff() / f0.cwiseAbs().maxCoeff();

    if (!r.all_physical()) return r;
    for (const auto& ps : r.samples)
        r.states.push_back({ps.inv.t, model.hamiltonian(ps.inv.t), model.coupling(ps.inv.t), ps.dec, ps.ground});
    for (const auto& [n1, n2] : opts.phase_states) r.phases.push_back(integrate_phases(r.states, n1, n2));
    return r;
}

}  // namespace lrinv
