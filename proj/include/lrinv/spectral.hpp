#pragma once

#include "lrinv/invariant.hpp"

namespace lrinv {

// (1/2)[i I, X] = Omega X with I = (1/2) X^T F X; Omega = J F.
struct OmegaMatrix {
    Mat4 matrix;

    Mat2 A1() const { return matrix.topLeftCorner<2, 2>(); }
    Mat2 B1() const { return matrix.topRightCorner<2, 2>(); }
    Mat2 C1() const { return matrix.bottomLeftCorner<2, 2>(); }
    Mat2 D1() const { return matrix.bottomRightCorner<2, 2>(); }

    // ||[Omega^T, Omega]||; not zero in general, reported for auditing.
    double normality_defect() const;
};

OmegaMatrix omega_from_coefficients(const InvariantCoefficients& c);

struct CharacteristicInvariants {
    double delta;           // det C + det B + 2 det A
    double delta_charpoly;  // -tr(Omega^2)/2
    double delta_omega;     // det Omega
    double discriminant;    // delta^2 - 4 delta_omega
    double sigma1, sigma2;  // sigma1 >= sigma2
};

// Throws Regime when a sigma_j^2 or the discriminant is negative beyond tolerance.
CharacteristicInvariants characteristic_invariants(const InvariantCoefficients& c, double tol = kStructuralTol);

enum class ClosedForm {
    Corrected,  // cofactor-consistent second component
    AsPrinted   // transcription of the printed component formulas
};

struct LeftEigenvectorComponents {
    double s1, q1, s2, q2, s3, s4, q4;
    CRow4 vector() const { return {cplx(s1, q1), cplx(s2, q2), cplx(s3, 0.0), cplx(s4, q4)}; }
};

// Unnormalized components for the left eigenvector of Omega with eigenvalue -i sigma.
LeftEigenvectorComponents closed_form_components(const InvariantCoefficients& c, double sigma,
                                                 ClosedForm form = ClosedForm::Corrected);

// Normalized so that chi_l chi_r = 1 with chi_r = -Sigma_y chi_l^dagger, phase fixed.
// Throws Degenerate when the unnormalized vector vanishes or has the wrong norm sign.
CRow4 left_eigenvector_closed_form(const InvariantCoefficients& c, double sigma,
                                   ClosedForm form = ClosedForm::Corrected);

// Phase convention: component 3 real and positive; when it vanishes, the first
// non-negligible component in the order 1, 2, 4.
CRow4 fix_phase(const CRow4& chi);
CVec4 right_from_left(const CRow4& chi_l);
double projective_distance(const CRow4& a, const CRow4& b);

struct SpectralDecomposition {
    double sigma1 = 0, sigma2 = 0;
    double delta = 0, delta_omega = 0;
    CRow4 chi_l1, chi_l2;
    CVec4 chi_r1, chi_r2;
    CMat4 Q, Qinv;
    double condition = 1.0;
};

struct SpectralOptions {
    double max_condition = 1e8;
    double tol = kStructuralTol;
};

// Numerical decomposition through the Hermitian matrix i F^{1/2} J F^{1/2};
// requires F positive definite (Regime error otherwise).
SpectralDecomposition decompose(const InvariantCoefficients& c, const SpectralOptions& opts = {});

struct QPair {
    CMat4 Q, Qinv;
    double condition;
};
QPair build_Q(const CRow4& chi_l1, const CRow4& chi_l2, double max_condition = 1e8);

// ||Qinv (-Sigma_y) Qinv^dagger - Sigma_z||_max
double ladder_algebra_check(const CMat4& Qinv);

struct DecompositionResiduals {
    double inverse;            // ||Q Qinv - I||
    double q_dagger;           // ||Q^dagger + Sigma_z Qinv Sigma_y||
    double diagonal;           // ||Qinv Omega Q - diag(-i s1, i s1, -i s2, i s2)||
    double ladder;
    double biorthonormality;
    double sigma_form;         // ||Q^dagger F Q - diag(s1, s1, s2, s2)||
    double eigen_left;         // ||chi_l Omega + i sigma chi_l||
    double block_identities;   // A1 = i sy C etc.
    double determinant_relations;
    double max() const;
};

DecompositionResiduals verify_decomposition(const InvariantCoefficients& c, const SpectralDecomposition& d);

}  // namespace lrinv
