#include "lrinv/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <gsl/gsl_integration.h>

#include "lrinv/errors.hpp"

namespace lrinv {

using namespace std::complex_literals;

namespace {

void split_components(const CRow4& l1, const CRow4& l2, CMat2& lam1, CMat2& lam2) {
    lam1 << l1(0), l1(2), l2(0), l2(2);
    lam2 << l1(1), l1(3), l2(1), l2(3);
}

}  // namespace

CMat2 lambda_elements(const CRow4& l1, const CRow4& l2) {
    // chi_ljk = component k of mode j
    const cplx c11 = l1(0), c12 = l1(1), c13 = l1(2), c14 = l1(3);
    const cplx c21 = l2(0), c22 = l2(1), c23 = l2(2), c24 = l2(3);
    const cplx det2 = c12 * c24 - c14 * c22;
    const cplx f = 1.0i / det2;
    CMat2 lam;
    lam(0, 0) = f * (c24 * c11 - c14 * c21);
    lam(0, 1) = f * (c24 * c13 - c14 * c23);
    lam(1, 0) = f * (c12 * c21 - c22 * c11);
    lam(1, 1) = f * (c12 * c23 - c22 * c13);
    return lam;
}

GaussianState gaussian_from_lambda(const CMat2& lambda) {
    GaussianState g;
    g.asymmetry = std::abs(lambda(0, 1) - lambda(1, 0));
    g.lambda = 0.5 * (lambda + lambda.transpose());
    const Mat2 lr = g.lambda.real();
    g.delta_r = lr.determinant();
    if (!(lr(0, 0) > 0.0 && g.delta_r > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "Re(Lambda) is not positive definite (Lambda11_r = " << lr(0, 0) << ", Delta_r = " << g.delta_r
           << "); the state is not normalizable";
        fail(ErrorKind::Positivity, os.str());
    }
    g.n0 = std::pow(g.delta_r / (std::numbers::pi * std::numbers::pi), 0.25);
    return g;
}

GaussianState ground_state(const CRow4& l1, const CRow4& l2) {
    CMat2 lam1, lam2;
    split_components(l1, l2, lam1, lam2);
    const cplx det2 = lam2.determinant();
    if (!(std::abs(det2) > 1e-13 * std::max(1.0, lam2.cwiseAbs().maxCoeff() * lam2.cwiseAbs().maxCoeff())))
        fail(ErrorKind::Degenerate, "momentum block of the left eigenvectors is singular");
    GaussianState g = gaussian_from_lambda(1.0i * lam2.inverse() * lam1);
    g.lambda1l = lam1;
    g.lambda2l = lam2;
    return g;
}

GaussianState ground_state(const SpectralDecomposition& dec) { return ground_state(dec.chi_l1, dec.chi_l2); }

Moments moments(const GaussianState& g) {
    const Mat2 lr = g.lambda.real(), li = g.lambda.imag();
    const Mat2 lri = lr.inverse();
    const Mat2 xx = 0.5 * lri;
    const Mat2 pp = 0.5 * (lr + li * lri * li);
    const Mat2 xp = -0.5 * lri * li;  // symmetrized <x_a p_b>
    Moments m;
    auto& s = m.second;
    s.x1x1 = xx(0, 0);
    s.x2x2 = xx(1, 1);
    s.x1x2 = xx(0, 1);
    s.p1p1 = pp(0, 0);
    s.p2p2 = pp(1, 1);
    s.p1p2 = pp(0, 1);
    s.x1p1_anti = 2.0 * xp(0, 0);
    s.x2p2_anti = 2.0 * xp(1, 1);
    s.x1p2 = xp(0, 1);
    s.x2p1 = xp(1, 0);
    return m;
}

namespace {

struct HermiteRule {
    std::vector<double> x, w;
};

HermiteRule hermite_rule(int n) {
    gsl_integration_fixed_workspace* ws =
        gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, std::size_t(n), 0.0, 1.0, 0.0, 0.0);
    if (!ws) fail(ErrorKind::Numerical, "failed to build Gauss-Hermite rule");
    HermiteRule r;
    r.x.assign(gsl_integration_fixed_nodes(ws), gsl_integration_fixed_nodes(ws) + n);
    r.w.assign(gsl_integration_fixed_weights(ws), gsl_integration_fixed_weights(ws) + n);
    gsl_integration_fixed_free(ws);
    return r;
}

}  // namespace

Moments moments_quadrature(const GaussianState& g, int nodes) {
    const Mat2 lr = g.lambda.real();
    Eigen::SelfAdjointEigenSolver<Mat2> es(lr);
    const Eigen::Vector2d lam = es.eigenvalues();
    const Mat2 r = es.eigenvectors();
    const HermiteRule rule = hermite_rule(nodes);
    const CMat2& L = g.lambda;

    // |psi|^2 = N0^2 exp(-x^T Lr x); with x = R diag(1/sqrt(lam)) y the weight is exp(-|y|^2).
    const double jac = g.n0 * g.n0 / std::sqrt(lam(0) * lam(1));
    CMat2 xx = CMat2::Zero(), pp = CMat2::Zero(), xp = CMat2::Zero();
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            const double w = rule.w[i] * rule.w[j] * jac;
            const Eigen::Vector2d y(rule.x[i] / std::sqrt(lam(0)), rule.x[j] / std::sqrt(lam(1)));
            const Eigen::Vector2d x = r * y;
            const Eigen::Vector2cd lx = L * x.cast<cplx>();
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    xx(a, b) += w * x(a) * x(b);
                    // p_a p_b psi = (Lambda_ab - (Lambda x)_a (Lambda x)_b) psi
                    pp(a, b) += w * (L(a, b) - lx(a) * lx(b));
                    // x_a p_b psi = i x_a (Lambda x)_b psi
                    xp(a, b) += w * 1.0i * x(a) * lx(b);
                }
            }
        }
    }
    Moments m;
    auto& s = m.second;
    s.x1x1 = xx(0, 0).real();
    s.x2x2 = xx(1, 1).real();
    s.x1x2 = xx(0, 1).real();
    s.p1p1 = pp(0, 0).real();
    s.p2p2 = pp(1, 1).real();
    s.p1p2 = pp(0, 1).real();
    // {x, p} = 2 x p - i
    const cplx a1 = 2.0 * xp(0, 0) - 1.0i, a2 = 2.0 * xp(1, 1) - 1.0i;
    s.x1p1_anti = a1.real();
    s.x2p2_anti = a2.real();
    s.x1p2 = xp(0, 1).real();
    s.x2p1 = xp(1, 0).real();
    m.max_imag = std::max({std::abs(xx.imag().maxCoeff()), std::abs(pp(0, 0).imag()), std::abs(pp(1, 1).imag()),
                           std::abs(pp(0, 1).imag()), std::abs(a1.imag()), std::abs(a2.imag()),
                           std::abs(xp(0, 1).imag()), std::abs(xp(1, 0).imag())});
    return m;
}

std::vector<MomentAudit> audit_printed_moments(const GaussianState& g, double tol, int nodes) {
    const Moments q = moments_quadrature(g, nodes);
    const CMat2& L = g.lambda;
    const double l11r = L(0, 0).real(), l22r = L(1, 1).real(), l12r = L(0, 1).real(), l12i = L(0, 1).imag();
    const double dr = g.delta_r;
    const cplx l11 = L(0, 0), l22 = L(1, 1), l12 = L(0, 1);

    const double x1sq = l22r / (2.0 * dr), x2sq = l11r / (2.0 * dr), x1x2 = -l12r / (2.0 * dr);
    std::vector<std::pair<std::string, std::pair<cplx, double>>> rows = {
        {"<x1^2>", {x1sq, q.second.x1x1}},
        {"<x2^2>", {x2sq, q.second.x2x2}},
        {"<x1 x2>", {x1x2, q.second.x1x2}},
        {"<p1^2>",
         {(l22r * std::norm(l11) + l11r * l12 * l12 - 2.0i * l12i * l12r * std::conj(l11)) / (2.0 * dr),
          q.second.p1p1}},
        {"<p2^2>",
         {(l11r * std::norm(l22) + l22r * l12 * l12 - 2.0i * l12i * l12r * std::conj(l22)) / (2.0 * dr),
          q.second.p2p2}},
        {"<p1 p2>", {l12 - l11 * l12 * x1sq - l22 * l12 * x2sq - (l11 * l22 + l12 * l12) * x1x2, q.second.p1p2}},
        {"<{x1,p1}>", {2.0i * l11 * x1sq + 2.0 * l12 * x1x2 - 1.0, q.second.x1p1_anti}},
        {"<{x2,p2}>", {2.0i * l22 * x2sq + 2.0 * l12 * x1x2 - 1.0, q.second.x2p2_anti}},
        {"<x1 p2>", {1.0i * l12 * x1sq + l22 * x1x2, q.second.x1p2}},
        {"<x2 p1>", {1.0i * l12 * x2sq + l11 * x1x2, q.second.x2p1}},
    };
    std::vector<MomentAudit> out;
    for (const auto& [name, v] : rows) {
        const double dev = std::abs(v.first - v.second);
        out.push_back({name, v.first, v.second, dev, dev <= tol});
    }
    return out;
}

Mat4 covariance(const Moments& m) {
    const auto& s = m.second;
    Mat4 v;
    v << s.x1x1, 0.5 * s.x1p1_anti, s.x1x2, s.x1p2,
         0.5 * s.x1p1_anti, s.p1p1, s.x2p1, s.p1p2,
         s.x1x2, s.x2p1, s.x2x2, 0.5 * s.x2p2_anti,
         s.x1p2, s.p1p2, 0.5 * s.x2p2_anti, s.p2p2;
    return v;
}

Mat4 covariance(const GaussianState& g) { return covariance(moments(g)); }

Mat4 partial_transpose(const Mat4& V) {
    const Vec4 t(1, 1, 1, -1);
    return t.asDiagonal() * V * t.asDiagonal();
}

SimonInvariants simon_criterion(const Mat4& V, double tol) {
    const Mat2 j = symplectic::J2();
    const Mat2 v11 = V.topLeftCorner<2, 2>(), v22 = V.bottomRightCorner<2, 2>(), v12 = V.topRightCorner<2, 2>();
    const Mat2 v12t = j * v12 * j, v21t = j * v12.transpose() * j;

    SimonInvariants s;
    s.delta1 = v11.determinant();
    s.delta2 = v22.determinant();
    s.delta12 = v12.determinant();
    s.tau = (v11 * v12t * v22 * v21t).trace();
    const double q = 0.25 - std::abs(s.delta12);
    s.lhs = s.delta1 * s.delta2 + q * q - s.tau;
    s.rhs = 0.25 * (s.delta1 + s.delta2);
    s.rhs_printed = s.delta1 + s.delta2;
    const double scale = std::max(1.0, std::abs(s.delta1 * s.delta2));
    s.inequality_holds = s.lhs - s.rhs >= -tol * scale;
    s.printed_form_holds = s.lhs - s.rhs_printed >= -tol * scale;
    s.ppt_nu_min = symplectic::symplectic_eigenvalues(partial_transpose(V)).second;
    s.ppt_holds = s.ppt_nu_min >= 0.5 - tol * std::max(1.0, V.cwiseAbs().maxCoeff());
    s.separable = s.inequality_holds && s.ppt_holds;
    return s;
}

GroundStateInequality ground_state_inequality(const GaussianState& g, double tol) {
    const CMat2& L = g.lambda;
    const double a = L(0, 0).real(), b = L(1, 1).real(), cr = L(0, 1).real(), ci = L(0, 1).imag();
    const double dr = g.delta_r;
    const double cr2 = cr * cr, cr4 = cr2 * cr2, ci2 = ci * ci;
    GroundStateInequality r;
    r.lhs = std::norm(L(0, 1)) * dr * dr - (cr4 + 2.0 * ci2 * a * b) * dr + 2.0 * ci2 * (2.0 * cr4 - a * b * ci2) +
            3.0 * a * b * (a * a * b * b - 2.0 * cr4) + 3.0 * a * a * b * b * cr2;
    r.holds = r.lhs >= -tol;
    r.simon_separable = simon_criterion(covariance(g)).separable;
    r.agrees = r.holds == r.simon_separable;
    return r;
}

cplx gaussian_overlap(const GaussianState& a, const GaussianState& b) {
    const CMat2 s = a.lambda.conjugate() + b.lambda;
    // sqrt(det s) through the principal roots of its eigenvalues, continuous near Re(s) > 0
    Eigen::ComplexEigenSolver<CMat2> es(s, false);
    const cplx root = std::sqrt(es.eigenvalues()(0)) * std::sqrt(es.eigenvalues()(1));
    return a.n0 * b.n0 * 2.0 * std::numbers::pi / root;
}

}  // namespace lrinv
