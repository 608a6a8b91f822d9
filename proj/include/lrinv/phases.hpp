#pragma once

#include <vector>

#include "lrinv/gaussian.hpp"

namespace lrinv {

struct SpectrumEntry {
    int n1, n2;
    double energy;
};

// E = (n1 + 1/2) s1 + (n2 + 1/2) s2 for n1, n2 <= nmax, ascending, ties by (n1, n2).
std::vector<SpectrumEntry> spectrum(double sigma1, double sigma2, int nmax);
std::vector<SpectrumEntry> spectrum(const SpectralDecomposition& dec, int nmax);

// Roots +-s~_j of det(l - Sigma_y H) = l^4 + D~ l^2 + D_O~.
struct TildeSpectral {
    double tilde_delta = 0, tilde_delta_omega = 0, discriminant = 0;
    double sigma_t1 = 0;
    cplx sigma_t2 = 0;
    bool stable = false;
    double stability_product = 0;  // (alpha2 - 4 mu1 nu1^2)(alpha1 - 4 mu2 nu2^2)
    // same quantities from Sigma_y H directly
    double tilde_delta_matrix = 0, tilde_delta_omega_matrix = 0;
    double root_mismatch = 0;  // distance between closed-form and eigensolver roots
    double route_mismatch() const;
};

TildeSpectral tilde_spectral(const Coupling& k);
TildeSpectral tilde_spectral(const PhysicalParams& p, double t);

// (2 n1 + 1) s~1 + (2 n2 + 1) s~2; Regime error when s~2 is imaginary.
double dynamical_phase_rate(const TildeSpectral& ts, int n1, int n2);
// sqrt(-D~ + 2 sqrt(D_O~))
double dynamical_phase_rate_ground_alt(const TildeSpectral& ts);

// Symmetrized covariance of |n1, n2> built from Q.
Mat4 fock_state_covariance(const SpectralDecomposition& dec, int n1, int n2);
// <n1, n2| X^T H X |n1, n2>
double energy_expectation(const QuadraticForm& h, const SpectralDecomposition& dec, int n1, int n2);

struct GeometricRate {
    double rate;       // i <psi|d/dt psi>, real part
    double imag_part;  // vanishes for a normalized state
};

// Ground state: i <0,0| d/dt |0,0> from N0, dN0/dt and dLambda/dt.
GeometricRate geometric_phase_rate(const GaussianState& g, const CMat2& lambda_dot, double n0_dot);

// Extra rate for |n1, n2>: i sum_k n_k [a_k, d a_k^dagger / dt].
double excited_geometric_increment(const SpectralDecomposition& dec, const CRow4& chi_l1_dot,
                                   const CRow4& chi_l2_dot, int n1, int n2);

struct PhaseSample {
    double t;
    double energy;            // E_{n1,n2} of the invariant
    double geometric_rate;
    double dynamical_rate;    // -<H>
    double theta_g;
    double theta_d;
    double theta_d_printed;   // -int of the printed rate; NaN when unstable
    double geometric_imag;
};

struct PhaseTrajectory {
    int n1 = 0, n2 = 0;
    std::vector<PhaseSample> samples;
    double theta(std::size_t i) const { return samples[i].theta_g + samples[i].theta_d; }
};

// Per-sample data required by the phase integration.
struct InstantState {
    double t;
    QuadraticForm hamiltonian;
    Coupling coupling;
    SpectralDecomposition dec;
    GaussianState ground;
};

// Rates at every sample (Lambda, N0, chi derivatives by centered differences,
// one-sided at the ends), phases accumulated by the trapezoid rule from the first sample.
PhaseTrajectory integrate_phases(const std::vector<InstantState>& states, int n1, int n2);

// -sum_k arg <psi_k|psi_k+1> over a discretized ground-state path.
double berry_phase_overlap(const std::vector<GaussianState>& path);

struct TdseSolution {
    int n1, n2;
    double t;
    double energy;
    double theta_g, theta_d, theta;
    bool has_wavefunction;
    CMat2 lambda;
    double n0;
};

// Linear interpolation of the phase trajectory at t.
TdseSolution tdse_solution(const std::vector<InstantState>& states, const PhaseTrajectory& ph, double t);

}  // namespace lrinv
