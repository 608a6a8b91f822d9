#pragma once

#include <utility>

#include "lrinv/types.hpp"

namespace lrinv {

inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kIntegratedTol = 1e-8;

namespace symplectic {

Mat2 J2();
// Block form [[0, I], [-I, 0]]; used only for the sp(4) membership test.
Mat4 J4();
// Mode-ordered commutator metric: [X_a, X_b] = i J_ab, J = diag(j, j), j = [[0,1],[-1,0]].
Mat4 mode_metric();
CMat2 sigma_y2();
Mat2 sigma_x2();
Mat2 sigma_z2();
// diag(sigma_y, sigma_y); [X_a, X_b] = -(Sigma_y)_ab.
CMat4 SigmaY();
Mat4 SigmaZ();
// antidiag(sigma_x, sigma_x)
Mat4 Sx();
// P with X_mode = P * (x1, x2, p1, p2)
Mat4 block_to_mode();

bool is_hamiltonian_matrix(const Mat4& S, double tol = kStructuralTol);

// [X_alpha, X_beta] for 1-based indices.
cplx canonical_commutator(int alpha, int beta);

// Williamson eigenvalues (nu1 >= nu2) of a positive-definite covariance matrix.
std::pair<double, double> symplectic_eigenvalues(const Mat4& V);

// Smallest eigenvalue of the Hermitian V + (i/2) J.
double uncertainty_margin(const Mat4& V);
bool uncertainty_ok(const Mat4& V, double tol = kStructuralTol);

// Random element of Sp(2,R) and of Sp(4,R) (mode ordering), for tests.
template <class Rng>
Mat2 random_sp2(Rng& rng);

}  // namespace symplectic
}  // namespace lrinv

#include <random>

namespace lrinv::symplectic {

template <class Rng>
Mat2 random_sp2(Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat2 m;
    m << u(rng), u(rng), u(rng), u(rng);
    while (std::abs(m.determinant()) < 0.1) m << u(rng), u(rng), u(rng), u(rng);
    const double d = m.determinant();
    if (d < 0) m.row(0) *= -1.0;
    return m / std::sqrt(std::abs(d));
}

}  // namespace lrinv::symplectic
