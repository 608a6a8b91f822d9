#pragma once

#include <array>
#include <span>
#include <vector>

#include "lrinv/model.hpp"
#include "lrinv/symplectic.hpp"

namespace lrinv {

// Coefficients of the quadratic invariant
//   u11 x1^2 + v11 p1^2 + w11 {x1,p1} + u22 x2^2 + v22 p2^2 + w22 {x2,p2}
//   + 2 u12 x1 x2 + 2 v12 p1 p2 + 2 w21 p1 x2 + 2 w12 x1 p2 .
// The operator used for spectra is half of this sum, (1/2) X^T F X with
// F = to_quadratic_form(c).
struct InvariantCoefficients {
    double u11 = 0, u22 = 0, v11 = 0, v22 = 0, w11 = 0, w22 = 0, u12 = 0, v12 = 0, w21 = 0, w12 = 0;

    static constexpr std::array<const char*, 10> names = {
        "u11", "u22", "v11", "v22", "w11", "w22", "u12", "v12", "w21", "w12"};

    std::array<double, 10> to_array() const {
        return {u11, u22, v11, v22, w11, w22, u12, v12, w21, w12};
    }
    static InvariantCoefficients from_array(const std::array<double, 10>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9]};
    }

    // Grouped views: w = (w12, w21), u = (u11, v11, u22, v22), v = (v12, w22, w11, u12).
    Eigen::Vector2d w() const { return {w12, w21}; }
    Vec4 u() const { return {u11, v11, u22, v22}; }
    Vec4 v() const { return {v12, w22, w11, u12}; }
    static InvariantCoefficients from_groups(const Eigen::Vector2d& w, const Vec4& u, const Vec4& v);

    InvariantCoefficients operator+(const InvariantCoefficients& o) const;
    InvariantCoefficients operator*(double s) const;
    double max_abs() const;
};

// Linear system  w' = nu v,  u' = 2 alpha v,  v' = beta u + mu w.
struct CoefficientMatrices {
    Eigen::Matrix<double, 4, 2> mu;
    Mat4 alpha;
    Eigen::Matrix<double, 2, 4> nu;
    Mat4 beta;
};

// Layout of the printed matrices. The printed nu_j-terms are half of what the
// Hamiltonian implies; `nu_scale` = 2 gives the dynamics of X^T H X, 1 gives
// the matrices exactly as printed (kept for auditing).
CoefficientMatrices coefficient_matrices(const Coupling& c, double nu_scale = 2.0);
CoefficientMatrices coefficient_matrices(const PhysicalParams& p, double t);

// nu assembled independently as sigma_x mu^T Sx
Eigen::Matrix<double, 2, 4> nu_from_mu(const Eigen::Matrix<double, 4, 2>& mu);

InvariantCoefficients rhs(const InvariantCoefficients& c, const CoefficientMatrices& m);
InvariantCoefficients rhs(const InvariantCoefficients& c, const Coupling& k);
InvariantCoefficients rhs(const InvariantCoefficients& c, const PhysicalParams& p, double t);

QuadraticForm to_quadratic_form(const InvariantCoefficients& c);
InvariantCoefficients from_quadratic_form(const QuadraticForm& f);

// Coefficients of the instantaneous Hamiltonian, usable as an initial invariant.
InvariantCoefficients hamiltonian_coefficients(const QuadraticForm& h);

// Sigma' such that [X^T A X, X^T B X] = i X^T (A Sigma' B - B Sigma' A) X.
Mat4 bracket_metric();

// dF/dt required by invariance: -(F Sigma' H - H Sigma' F).
Mat4 bracket_derivative(const Mat4& f, const Mat4& h);

double invariance_residual(const InvariantCoefficients& c, const InvariantCoefficients& cdot,
                           const QuadraticForm& h);
double invariance_residual(const InvariantCoefficients& c, const InvariantCoefficients& cdot,
                           const PhysicalParams& p, double t);

struct IntegratorOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 1e-3;
    std::size_t max_steps = 20'000'000;
};

struct InvariantSample {
    double t;
    InvariantCoefficients c;
    InvariantCoefficients cdot;
    double residual;
};

// Dense output at `times` (monotone, either direction) within the model's domain.
std::vector<InvariantSample> integrate(const InvariantCoefficients& c0, const HamiltonianModel& model,
                                       std::span<const double> times, const IntegratorOptions& opts = {});
std::vector<InvariantSample> integrate(const InvariantCoefficients& c0, const HamiltonianModel& model,
                                       double t0, double t1, std::size_t samples,
                                       const IntegratorOptions& opts = {});

// Heisenberg flow X(t1) = S X(t0) with S' = 2 J H S; any invariant obeys
// S^T F(t1) S = F(t0).
Mat4 symplectic_propagator(const HamiltonianModel& model, double t0, double t1,
                           const IntegratorOptions& opts = {});

std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace lrinv
