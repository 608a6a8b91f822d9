#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrinv/phases.hpp"

namespace lrinv {

struct PipelineOptions {
    std::vector<double> times;
    std::optional<InvariantCoefficients> initial;  // default: Hamiltonian at times.front()
    IntegratorOptions integrator;
    std::vector<std::pair<int, int>> phase_states{{0, 0}};
    SpectralOptions spectral;
};

struct PipelineSample {
    InvariantSample inv;
    bool physical = false;  // invariant positive definite, decomposition available
    std::string failure;
    SpectralDecomposition dec;
    DecompositionResiduals residuals{};
    double closed_form_distance = 0;  // NaN when the closed form is degenerate
    TildeSpectral tilde;
    GaussianState ground;
    Mat4 covariance = Mat4::Zero();
    std::pair<double, double> symplectic{0, 0};
    SimonInvariants simon;
    GroundStateInequality ground_inequality;
};

struct PipelineResult {
    std::vector<PipelineSample> samples;
    std::vector<InstantState> states;  // filled only when every sample is physical
    std::vector<PhaseTrajectory> phases;
    double propagator_defect = 0;       // ||S^T F(t1) S - F(t0)|| / ||F(t0)||
    bool all_physical() const;
};

// Invariant -> decomposition -> ground state -> separability -> phases.
PipelineResult run_pipeline(const HamiltonianModel& model, const PipelineOptions& opts);

// Static snapshot at one coupling, with the Hamiltonian itself as invariant.
PipelineSample analyze_static(const Coupling& k, const SpectralOptions& opts = {});

}  // namespace lrinv
