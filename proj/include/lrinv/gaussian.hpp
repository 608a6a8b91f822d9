#pragma once

#include <string>
#include <vector>

#include "lrinv/spectral.hpp"

namespace lrinv {

// psi(x) = N0 exp(-x^T Lambda x / 2), x = (x1, x2).
struct GaussianState {
    CMat2 lambda;
    double n0 = 0;
    CMat2 lambda1l, lambda2l;  // x- and p-components of the two left eigenvectors
    double delta_r = 0;        // det Re(Lambda)
    double asymmetry = 0;      // |Lambda12 - Lambda21|
};

// Lambda = i (Lambda2l)^-1 Lambda1l.
GaussianState ground_state(const SpectralDecomposition& dec);
GaussianState ground_state(const CRow4& chi_l1, const CRow4& chi_l2);
// Symmetrized Lambda; throws Positivity unless Re(Lambda) is positive definite.
GaussianState gaussian_from_lambda(const CMat2& lambda);

// The four printed element formulas, written out component by component.
CMat2 lambda_elements(const CRow4& chi_l1, const CRow4& chi_l2);

// Second moments; anticommutators are stored as <{x_j, p_j}>.
struct SecondMoments {
    double x1x1 = 0, x2x2 = 0, x1x2 = 0;
    double p1p1 = 0, p2p2 = 0, p1p2 = 0;
    double x1p1_anti = 0, x2p2_anti = 0;
    double x1p2 = 0, x2p1 = 0;
};

struct Moments {
    Vec4 first = Vec4::Zero();
    SecondMoments second;
    double max_imag = 0;  // largest discarded imaginary part (quadrature only)
};

Moments moments(const GaussianState& g);
// Gauss-Hermite quadrature in the eigenbasis of Re(Lambda); independent of the closed forms.
Moments moments_quadrature(const GaussianState& g, int nodes = 64);

struct MomentAudit {
    std::string name;
    cplx printed;       // printed formula evaluated verbatim
    double reference;   // quadrature value
    double deviation;
    bool agrees;
};
std::vector<MomentAudit> audit_printed_moments(const GaussianState& g, double tol = 1e-8, int nodes = 64);

// 1/2 <{X_a, X_b}> in (x1, p1, x2, p2) ordering.
Mat4 covariance(const Moments& m);
Mat4 covariance(const GaussianState& g);

struct SimonInvariants {
    double delta1 = 0, delta2 = 0, delta12 = 0, tau = 0;
    double lhs = 0;           // D1 D2 + (1/4 - |D12|)^2 - tau
    double rhs = 0;           // (D1 + D2) / 4
    double rhs_printed = 0;   // D1 + D2
    bool inequality_holds = false;
    bool printed_form_holds = false;
    double ppt_nu_min = 0;    // smallest symplectic eigenvalue of T V T
    bool ppt_holds = false;
    bool separable = false;
};

Mat4 partial_transpose(const Mat4& V);
SimonInvariants simon_criterion(const Mat4& V, double tol = 1e-10);

struct GroundStateInequality {
    double lhs = 0;
    bool holds = false;
    bool simon_separable = false;
    bool agrees = false;
};
// Printed expanded polynomial in Lambda_r, Lambda_i and Delta_r, evaluated verbatim.
GroundStateInequality ground_state_inequality(const GaussianState& g, double tol = 1e-10);

// <a|b> for two normalized Gaussians
cplx gaussian_overlap(const GaussianState& a, const GaussianState& b);

}  // namespace lrinv
