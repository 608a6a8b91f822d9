#include "lrinv/symplectic.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lrinv/errors.hpp"

namespace lrinv::symplectic {

using namespace std::complex_literals;

Mat2 J2() {
    Mat2 j;
    j << 0, 1, -1, 0;
    return j;
}

Mat4 J4() {
    Mat4 j = Mat4::Zero();
    j.topRightCorner<2, 2>() = Mat2::Identity();
    j.bottomLeftCorner<2, 2>() = -Mat2::Identity();
    return j;
}

Mat4 mode_metric() {
    Mat4 j = Mat4::Zero();
    j.topLeftCorner<2, 2>() = J2();
    j.bottomRightCorner<2, 2>() = J2();
    return j;
}

CMat2 sigma_y2() {
    CMat2 s;
    s << 0.0, -1.0i, 1.0i, 0.0;
    return s;
}

Mat2 sigma_x2() {
    Mat2 s;
    s << 0, 1, 1, 0;
    return s;
}

Mat2 sigma_z2() {
    Mat2 s;
    s << 1, 0, 0, -1;
    return s;
}

CMat4 SigmaY() {
    CMat4 s = CMat4::Zero();
    s.topLeftCorner<2, 2>() = sigma_y2();
    s.bottomRightCorner<2, 2>() = sigma_y2();
    return s;
}

Mat4 SigmaZ() { return Vec4(1, -1, 1, -1).asDiagonal(); }

Mat4 Sx() {
    Mat4 s = Mat4::Zero();
    s.topRightCorner<2, 2>() = sigma_x2();
    s.bottomLeftCorner<2, 2>() = sigma_x2();
    return s;
}

Mat4 block_to_mode() {
    Mat4 p = Mat4::Zero();
    p(0, 0) = 1;  // x1
    p(1, 2) = 1;  // p1
    p(2, 1) = 1;  // x2
    p(3, 3) = 1;  // p2
    return p;
}

bool is_hamiltonian_matrix(const Mat4& S, double tol) {
    const Mat4 j = J4();
    return (S * j + j * S.transpose()).cwiseAbs().maxCoeff() <= tol;
}

cplx canonical_commutator(int alpha, int beta) {
    if (alpha < 1 || alpha > 4 || beta < 1 || beta > 4) {
        std::ostringstream os;
        os << "canonical_commutator index out of range: (" << alpha << ", " << beta << ")";
        fail(ErrorKind::Domain, os.str());
    }
    return -SigmaY()(alpha - 1, beta - 1);
}

std::pair<double, double> symplectic_eigenvalues(const Mat4& V) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (V + V.transpose()));
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
        fail(ErrorKind::Positivity, "covariance matrix is not positive definite");
    const Mat4 root = es.operatorSqrt();
    // V^{1/2} (iJ) V^{1/2} is Hermitian with eigenvalues +-nu_j.
    const CMat4 h = 1.0i * (root * mode_metric() * root).cast<cplx>();
    Eigen::SelfAdjointEigenSolver<CMat4> hs(h);
    const Vec4 ev = hs.eigenvalues();  // ascending: -nu1, -nu2, nu2, nu1
    return {ev(3), ev(2)};
}

double uncertainty_margin(const Mat4& V) {
    const CMat4 h = V.cast<cplx>() + 0.5i * mode_metric().cast<cplx>();
    Eigen::SelfAdjointEigenSolver<CMat4> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool uncertainty_ok(const Mat4& V, double tol) { return uncertainty_margin(V) >= -tol; }

}  // namespace lrinv::symplectic
