#include "lrinv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "lrinv/errors.hpp"

namespace lrinv {

using namespace std::complex_literals;
using symplectic::mode_metric;
using symplectic::SigmaY;
using symplectic::SigmaZ;

double OmegaMatrix::normality_defect() const {
    return (matrix.transpose() * matrix - matrix * matrix.transpose()).cwiseAbs().maxCoeff();
}

OmegaMatrix omega_from_coefficients(const InvariantCoefficients& c) {
    Mat4 o;
    o << c.w11, c.v11, c.w21, c.v12,
         -c.u11, -c.w11, -c.u12, -c.w12,
         c.w12, c.v12, c.w22, c.v22,
         -c.u12, -c.w21, -c.u22, -c.w22;
    return {o};
}

CharacteristicInvariants characteristic_invariants(const InvariantCoefficients& c, double tol) {
    const Mat4 om = omega_from_coefficients(c).matrix;
    CharacteristicInvariants ci{};
    const double det_c = c.u11 * c.v11 - c.w11 * c.w11;
    const double det_b = c.u22 * c.v22 - c.w22 * c.w22;
    const double det_a = c.u12 * c.v12 - c.w21 * c.w12;
    ci.delta = det_c + det_b + 2.0 * det_a;
    ci.delta_charpoly = -0.5 * (om * om).trace();
    ci.delta_omega = om.determinant();
    ci.discriminant = ci.delta * ci.delta - 4.0 * ci.delta_omega;

    const double scale = std::max(1.0, ci.delta * ci.delta);
    if (std::abs(ci.delta - ci.delta_charpoly) > tol * std::max(1.0, std::abs(ci.delta))) {
        std::ostringstream os;
        os.precision(17);
        os << "Delta from blocks (" << ci.delta << ") and from the characteristic polynomial ("
           << ci.delta_charpoly << ") disagree";
        fail(ErrorKind::Numerical, os.str());
    }
    auto regime_error = [&](const char* what) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": Delta = " << ci.delta << ", Delta_Omega = " << ci.delta_omega
           << ", Delta^2 - 4 Delta_Omega = " << ci.discriminant;
        fail(ErrorKind::Regime, os.str());
    };
    if (ci.discriminant < -tol * scale) regime_error("complex characteristic roots");
    const double root = std::sqrt(std::max(ci.discriminant, 0.0));
    const double s1sq = 0.5 * (ci.delta + root);
    const double s2sq = 0.5 * (ci.delta - root);
    if (s2sq < -tol * std::max(1.0, std::abs(ci.delta)) || ci.delta_omega < -tol * scale)
        regime_error("sigma_j^2 < 0, invariant not positive definite");
    ci.sigma1 = std::sqrt(std::max(s1sq, 0.0));
    ci.sigma2 = std::sqrt(std::max(s2sq, 0.0));
    return ci;
}

LeftEigenvectorComponents closed_form_components(const InvariantCoefficients& c, double sg,
                                                 ClosedForm form) {
    const double u11 = c.u11, u22 = c.u22, v11 = c.v11, v22 = c.v22;
    const double w11 = c.w11, w22 = c.w22, u12 = c.u12, v12 = c.v12, w21 = c.w21, w12 = c.w12;
    (void)v22;
    const double s2 = sg * sg;
    LeftEigenvectorComponents r{};
    r.s1 = u11 * u11 * (v12 * u22 - w21 * w22) + u11 * u12 * (s2 + w12 * w21 + w11 * w22 - v12 * u12) -
           u11 * u22 * w11 * w12;
    r.q1 = sg * u11 * (w12 * u22 - u12 * w22 - u11 * w21 + u12 * w11);
    if (form == ClosedForm::Corrected) {
        r.s2 = u11 * (s2 * w21 + u12 * v11 * w22 - u12 * v12 * w21 - u22 * v11 * w12 + u22 * v12 * w11 -
                      w11 * w21 * w22 + w12 * w21 * w21);
        r.q2 = sg * u11 * (u12 * v11 + u22 * v12 - w11 * w21 - w21 * w22);
    } else {
        r.s2 = s2 * (u11 * w21 + u12 * w22 - u22 * w12) + w11 * w11 * (u12 * w22 - u22 * w12) +
               w21 * w11 * (u12 * w12 - u11 * w22) + w11 * v12 * (u11 * u22 - u12 * u12);
        r.q2 = sg * s2 * u12 +
               sg * (u12 * (w12 * w21 - v12 * u12 + w11 * w11) + u11 * (v12 * u22 - w21 * w22 - w11 * w21));
    }
    r.s3 = u11 * u22 * (s2 + w11 * w11 - u11 * v11) + u11 * u12 * (v11 * u12 - w11 * w21) +
           u11 * w21 * (u11 * w21 - u12 * w11);
    r.s4 = u11 * w22 * s2 + u11 * u11 * (v12 * w21 - v11 * w22) + u12 * u11 * (v11 * w12 - v12 * w11) +
           u11 * w11 * (w11 * w22 - w12 * w21);
    r.q4 = u11 * sg * s2 + u11 * sg * (w11 * w11 - u11 * v11 + w21 * w12 - v12 * u12);
    return r;
}

namespace {

// i chi J chi^dagger, real for any chi
double symplectic_norm(const CRow4& chi) {
    return (1.0i * (chi * mode_metric().cast<cplx>() * chi.adjoint())(0, 0)).real();
}

}  // namespace

CRow4 fix_phase(const CRow4& chi) {
    const double n = chi.norm();
    for (int k : {2, 0, 1, 3}) {
        const double a = std::abs(chi(k));
        if (a > 1e-8 * n) return chi * (std::conj(chi(k)) / a);
    }
    return chi;
}

CVec4 right_from_left(const CRow4& chi_l) { return -SigmaY() * chi_l.adjoint(); }

double projective_distance(const CRow4& a, const CRow4& b) {
    // min over phases of ||a/|a| - e^{i phi} b/|b|||, formed directly to avoid 1 - r^2 cancellation
    const CRow4 ua = a / a.norm(), ub = b / b.norm();
    const cplx ip = ua.dot(ub);  // conjugates ua
    const cplx align = std::abs(ip) > 0 ? std::conj(ip) / std::abs(ip) : cplx(1.0);
    return (ua - align * ub).norm();
}

CRow4 left_eigenvector_closed_form(const InvariantCoefficients& c, double sigma, ClosedForm form) {
    const CRow4 v = closed_form_components(c, sigma, form).vector();
    const double scale = std::pow(c.max_abs() + sigma, 4);
    if (!(v.norm() > 1e-10 * scale))
        fail(ErrorKind::Degenerate, "closed-form left eigenvector vanishes; use the numerical path");
    const double n = symplectic_norm(v);
    if (!(n > 1e-12 * v.squaredNorm()))
        fail(ErrorKind::Degenerate, "closed-form left eigenvector has non-positive symplectic norm");
    return fix_phase(v / std::sqrt(n));
}

QPair build_Q(const CRow4& l1, const CRow4& l2, double max_condition) {
    QPair p;
    p.Qinv.row(0) = l1;
    p.Qinv.row(1) = l1.conjugate();
    p.Qinv.row(2) = l2;
    p.Qinv.row(3) = l2.conjugate();
    const CVec4 r1 = right_from_left(l1), r2 = right_from_left(l2);
    p.Q.col(0) = r1;
    p.Q.col(1) = r1.conjugate();
    p.Q.col(2) = r2;
    p.Q.col(3) = r2.conjugate();
    // Qinv is assembled independently of Q, so its own singular values decide
    const Eigen::JacobiSVD<CMat4> svd(p.Qinv);
    const auto& sv = svd.singularValues();
    p.condition = sv(3) > 0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
    if (!(p.condition <= max_condition)) {
        std::ostringstream os;
        os << "||Q|| ||Q^-1|| = " << p.condition << " exceeds " << max_condition;
        fail(ErrorKind::Conditioning, os.str());
    }
    return p;
}

double ladder_algebra_check(const CMat4& Qinv) {
    const CMat4 g = Qinv * (-SigmaY()) * Qinv.adjoint();
    return (g - SigmaZ().cast<cplx>()).cwiseAbs().maxCoeff();
}

SpectralDecomposition decompose(const InvariantCoefficients& c, const SpectralOptions& opts) {
    const Mat4 f = to_quadratic_form(c).matrix();
    Eigen::SelfAdjointEigenSolver<Mat4> fs(f);
    if (fs.info() != Eigen::Success || !(fs.eigenvalues()(0) > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "invariant quadratic form is not positive definite (smallest eigenvalue "
           << fs.eigenvalues()(0) << ")";
        fail(ErrorKind::Regime, os.str());
    }
    const CharacteristicInvariants ci = characteristic_invariants(c, opts.tol);

    const Mat4 root = fs.operatorSqrt();
    const Mat4 a = root * mode_metric() * root;
    Eigen::SelfAdjointEigenSolver<CMat4> hs(1.0i * a.cast<cplx>());
    // eigenvalues ascending: -s1, -s2, s2, s1
    SpectralDecomposition d;
    d.sigma1 = -hs.eigenvalues()(0);
    d.sigma2 = -hs.eigenvalues()(1);
    d.delta = ci.delta;
    d.delta_omega = ci.delta_omega;
    auto left = [&](int k, double sigma) -> CRow4 {
        const CVec4 w = hs.eigenvectors().col(k) / std::sqrt(sigma);
        return fix_phase(w.transpose() * root.cast<cplx>());
    };
    d.chi_l1 = left(0, d.sigma1);
    d.chi_l2 = left(1, d.sigma2);
    d.chi_r1 = right_from_left(d.chi_l1);
    d.chi_r2 = right_from_left(d.chi_l2);
    const QPair q = build_Q(d.chi_l1, d.chi_l2, opts.max_condition);
    d.Q = q.Q;
    d.Qinv = q.Qinv;
    d.condition = q.condition;
    return d;
}

double DecompositionResiduals::max() const {
    return std::max({inverse, q_dagger, diagonal, ladder, biorthonormality, sigma_form, eigen_left,
                     block_identities, determinant_relations});
}

DecompositionResiduals verify_decomposition(const InvariantCoefficients& c, const SpectralDecomposition& d) {
    const Mat4 f = to_quadratic_form(c).matrix();
    const OmegaMatrix om = omega_from_coefficients(c);
    const CMat4 o = om.matrix.cast<cplx>();
    auto mx = [](const auto& m) { return m.cwiseAbs().maxCoeff(); };

    DecompositionResiduals r{};
    r.inverse = mx(d.Q * d.Qinv - CMat4::Identity());
    r.q_dagger = mx(d.Q.adjoint() + SigmaZ().cast<cplx>() * d.Qinv * SigmaY());
    CVec4 diag(-1.0i * d.sigma1, 1.0i * d.sigma1, -1.0i * d.sigma2, 1.0i * d.sigma2);
    r.diagonal = mx(d.Qinv * o * d.Q - CMat4(diag.asDiagonal()));
    r.ladder = ladder_algebra_check(d.Qinv);
    const cplx b11 = d.chi_l1 * d.chi_r1, b22 = d.chi_l2 * d.chi_r2;
    const cplx b12 = d.chi_l1 * d.chi_r2, b21 = d.chi_l2 * d.chi_r1;
    const cplx c11 = d.chi_l1.conjugate() * d.chi_r1.conjugate();
    const cplx c22 = d.chi_l2.conjugate() * d.chi_r2.conjugate();
    r.biorthonormality = std::max({std::abs(b11 - 1.0), std::abs(b22 - 1.0), std::abs(b12), std::abs(b21),
                                   std::abs(c11 - 1.0), std::abs(c22 - 1.0)});
    const Vec4 sig(d.sigma1, d.sigma1, d.sigma2, d.sigma2);
    r.sigma_form = mx(d.Q.adjoint() * f.cast<cplx>() * d.Q - CMat4(sig.cast<cplx>().asDiagonal()));
    r.eigen_left = std::max(mx(d.chi_l1 * o + 1.0i * d.sigma1 * d.chi_l1),
                            mx(d.chi_l2 * o + 1.0i * d.sigma2 * d.chi_l2));

    const Mat2 j = symplectic::J2();
    const Mat2 C = f.topLeftCorner<2, 2>(), A = f.bottomLeftCorner<2, 2>(), B = f.bottomRightCorner<2, 2>();
    r.block_identities = std::max({mx(om.A1() - j * C), mx(om.B1() - j * A.transpose()), mx(om.C1() - j * A),
                                   mx(om.D1() - j * B)});
    r.determinant_relations =
        std::max({std::abs(om.A1().determinant() - C.determinant()), std::abs(om.B1().determinant() - A.determinant()),
                  std::abs(om.C1().determinant() - A.determinant()), std::abs(om.D1().determinant() - B.determinant())});
    return r;
}

}  // namespace lrinv
