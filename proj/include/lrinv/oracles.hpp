#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "lrinv/fock.hpp"
#include "lrinv/pipeline.hpp"

namespace lrinv::oracle {

using Rng = std::mt19937_64;

Coupling random_coupling(Rng& rng);
// Positive-definite invariant coefficients with moderate squeezing.
InvariantCoefficients random_invariant(Rng& rng);
// Same, with the two modes decoupled (product ground state).
InvariantCoefficients random_decoupled_invariant(Rng& rng);
// Smooth sinusoid/polynomial mix with positive masses and springs.
PhysicalParams random_smooth_schedule(Rng& rng);

// (1/i)[H, O_k] for the ten ansatz operators O_k, fitted on the Fock basis.
struct CommutatorRow {
    std::string op;
    std::array<double, 10> fitted;
    std::array<double, 10> expected;  // column of the corrected linear map
    std::array<double, 10> printed;   // column of the printed matrices
    double fit_residual;
    double constant;
    double deviation;          // max |fitted - expected|
    double printed_deviation;  // max |fitted - printed|
};
std::vector<CommutatorRow> commutator_table(const Coupling& k, int cutoff);

struct AnnihilationReport {
    double residual1, residual2;  // ||a_j psi00||
    double norm;                  // ||psi00|| on the truncated basis
    int cutoff;                   // cutoff actually used
    double edge;                  // population near the truncation edge
};
// Escalates the cutoff to kEscalatedCutoff when the state is not converged
// (edge population above kEdgeTol) at the requested one.
inline constexpr int kEscalatedCutoff = 32;
inline constexpr double kEdgeTol = 1e-14;
AnnihilationReport annihilation_check(const SpectralDecomposition& dec, int cutoff);

struct LrCheckpoint {
    double t;
    double fidelity;
    double fock_phase;
    double lr_phase;  // theta_g + theta_d
    double phase_error;
};
struct LrPhaseReport {
    bool skipped = false;
    std::string reason;
    std::vector<LrCheckpoint> checkpoints;
    double min_fidelity = 1.0;
    double max_phase_error = 0.0;
    double max_geometric_imag = 0.0;
};
// Propagates the Fock ground state of the invariant at t0 under H(t) and compares
// with the instantaneous invariant ground state and the accumulated LR phase.
LrPhaseReport lr_phase_check(const HamiltonianModel& model, double t0, double t1, int steps, int checkpoints,
                             int cutoff, const IntegratorOptions& integ = {}, int n1 = 0, int n2 = 0);

struct SimonSweep {
    int draws = 0;
    int disagreements = 0;
    int separable = 0;
};
SimonSweep simon_vs_ppt(Rng& rng, int draws);

double wrap_angle(double a);

}  // namespace lrinv::oracle
