#pragma once

#include <functional>
#include <vector>

#include <Eigen/Sparse>

#include "lrinv/model.hpp"
#include "lrinv/types.hpp"

namespace lrinv::fock {

using SpMat = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;

// Two-mode number basis |n1, n2>, n_j < cutoff, index n1 * cutoff + n2.
struct TruncatedOperator {
    SpMat matrix;
    int cutoff = 0;
};

int index(int n1, int n2, int cutoff);

// Single-mode x or p (kind 0 / 1) on `cutoff` levels.
SpMat single_mode(int kind, int cutoff);
// X_a (a = 0..3) on the two-mode space.
SpMat phase_space_operator(int a, int cutoff);

// (1/2) X^T F X, symmetrically ordered. Products are formed on cutoff + 2
// levels and compressed, so matrix elements are exact.
TruncatedOperator represent_quadratic(const Mat4& f, int cutoff);
// sum_a c_a X_a
TruncatedOperator represent_linear(const CRow4& c, int cutoff);

// Mask of basis states with both occupations <= max_occ.
std::vector<int> block_indices(int cutoff, int max_occ);

struct CommutatorFit {
    Mat4 g;              // (1/i)[A, B] = (1/2) X^T g X + constant
    double constant = 0;
    double fit_residual = 0;  // max entry of the unexplained part on the trusted block
    int trusted_occupation = 0;
};

// (1/i)[(1/2) X^T Fa X, (1/2) X^T Fb X] fitted to the quadratic basis on the
// block with occupations <= cutoff - 5.
CommutatorFit commutator_check(const Mat4& fa, const Mat4& fb, int cutoff);

// The physical Hamiltonian X^T H X.
TruncatedOperator hamiltonian_operator(const QuadraticForm& h, int cutoff);

struct Eigenpairs {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};
Eigenpairs diagonalize(const TruncatedOperator& op);

// Multiply by a phase so that psi(x1 = 0, x2 = 0) is real and positive.
Vec gauge_fix_origin(const Vec& psi, int cutoff);
cplx value_at_origin(const Vec& psi, int cutoff);

// Probability in states with n1 or n2 >= cutoff - margin.
double edge_population(const Vec& psi, int cutoff, int margin = 2);

struct PropagateOptions {
    double leak_tol = 1e-6;
    double taylor_tol = 1e-15;
};

// Time-ordered midpoint exponential steps exp(-i H(t_mid) dt); H(t) gives the
// quadratic form of X^T H X. Throws Numerical when population reaches the edge.
Vec propagate(const std::function<QuadraticForm(double)>& h_of_t, const Vec& psi0, double t0, double t1,
              int steps, int cutoff, const PropagateOptions& opts = {});

// exp(-i A dt) v by a Taylor series with substeps.
Vec expmv(const SpMat& a, const Vec& v, double dt, double tol = 1e-15);

// Coefficients <n1, n2|psi> of a Gaussian N0 exp(-x^T L x / 2) by trapezoidal
// quadrature on a uniform grid.
Vec gaussian_to_fock(const CMat2& lambda, double n0, int cutoff);

}  // namespace lrinv::fock
