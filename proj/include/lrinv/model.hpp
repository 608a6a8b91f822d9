#pragma once

#include <span>
#include <variant>

#include "lrinv/schedule.hpp"
#include "lrinv/types.hpp"

namespace lrinv {

// Charged anisotropic oscillator in the symmetric-gauge field A = (-a01 x2, a02 x1).
struct PhysicalParams {
    ParamSchedule mu1{1.0}, mu2{1.0};
    ParamSchedule k1{1.0}, k2{1.0};
    ParamSchedule alpha01{0.0}, alpha02{0.0};
    double e = 1.0;

    TimeDomain domain() const;
};

// The six numbers that fix the Hamiltonian at one instant.
struct Coupling {
    double mu1 = 1, mu2 = 1;
    double alpha1 = 1, alpha2 = 1;
    double nu1 = 0, nu2 = 0;

    // k_j recovered from alpha_j = k_j + 4 mu_{3-j} nu_{3-j}^2
    double k1() const { return alpha1 - 4.0 * mu2 * nu2 * nu2; }
    double k2() const { return alpha2 - 4.0 * mu1 * nu1 * nu1; }
};

struct DerivedParams {
    double mu1, mu2;
    double nu1, nu2;
    double k01, k02;
    double alpha1, alpha2;

    Coupling coupling() const { return {mu1, mu2, alpha1, alpha2, nu1, nu2}; }
};

// Noncommutative phase space: [X1,X2] = i theta, [P1,P2] = i eta.
struct NCParams {
    double theta = 0.0, eta = 0.0;
    ParamSchedule m1{1.0}, m2{1.0};
    ParamSchedule omega1{1.0}, omega2{1.0};

    double hbar_e() const { return 1.0 + 0.25 * theta * eta; }
    TimeDomain domain() const;
};

// Real symmetric 4x4 matrix F of a quadratic operator in X = (x1, p1, x2, p2).
// Symmetry is enforced at construction.
class QuadraticForm {
public:
    QuadraticForm() : m_(Mat4::Zero()) {}
    explicit QuadraticForm(const Mat4& m) : m_(0.5 * (m + m.transpose())) {}

    const Mat4& matrix() const { return m_; }
    double operator()(int a, int b) const { return m_(a, b); }

private:
    Mat4 m_;
};

DerivedParams derive_params(const PhysicalParams& p, double t);

// The physical Hamiltonian is the Weyl-ordered X^T H X with this H.
QuadraticForm hamiltonian_matrix(const Coupling& c);
QuadraticForm hamiltonian_matrix(const PhysicalParams& p, double t);

Coupling nc_to_physical(const NCParams& nc, double t);

// Schedules equivalent to nc. Constant NC schedules map to constants; otherwise
// the snapshot is sampled at `times` and interpolated.
PhysicalParams to_physical_params(const NCParams& nc, std::span<const double> times, double e = 1.0);

// X~ = M X with X~ = (X1, P1, X2, P2) the NC variables.
Mat4 bopp_shift_map(const NCParams& nc);

// M^T H_nc M with H_nc = diag(m1 w1^2/2, 1/(2 m1), m2 w2^2/2, 1/(2 m2)).
QuadraticForm nc_hamiltonian_matrix(const NCParams& nc, double t);

class HamiltonianModel {
public:
    HamiltonianModel(PhysicalParams p) : params_(std::move(p)) {}
    HamiltonianModel(NCParams nc) : params_(std::move(nc)) {}

    Coupling coupling(double t) const;
    // For NC models this goes through the Bopp map rather than the snapshot.
    QuadraticForm hamiltonian(double t) const;
    TimeDomain domain() const;
    bool is_static() const;
    bool is_noncommutative() const { return std::holds_alternative<NCParams>(params_); }

    const std::variant<PhysicalParams, NCParams>& params() const { return params_; }

private:
    std::variant<PhysicalParams, NCParams> params_;
};

}  // namespace lrinv
