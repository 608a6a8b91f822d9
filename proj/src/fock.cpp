#include "lrinv/fock.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lrinv/errors.hpp"

namespace lrinv::fock {

using namespace std::complex_literals;
using Triplet = Eigen::Triplet<cplx>;

int index(int n1, int n2, int cutoff) { return n1 * cutoff + n2; }

SpMat single_mode(int kind, int n) {
    std::vector<Triplet> t;
    const double r = 1.0 / std::sqrt(2.0);
    for (int k = 1; k < n; ++k) {
        const double s = std::sqrt(double(k)) * r;
        // a|k> = sqrt(k)|k-1>
        if (kind == 0) {
            t.emplace_back(k - 1, k, s);
            t.emplace_back(k, k - 1, s);
        } else {
            t.emplace_back(k - 1, k, -1.0i * s);
            t.emplace_back(k, k - 1, 1.0i * s);
        }
    }
    SpMat m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

namespace {

SpMat kron(const SpMat& a, const SpMat& b) {
    std::vector<Triplet> t;
    t.reserve(std::size_t(a.nonZeros() * b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (SpMat::InnerIterator ia(a, ka); ia; ++ia)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (SpMat::InnerIterator ib(b, kb); ib; ++ib)
                    t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                   ia.value() * ib.value());
    SpMat m(a.rows() * b.rows(), a.cols() * b.cols());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SpMat identity(int n) {
    SpMat m(n, n);
    m.setIdentity();
    return m;
}

// Rows select the cutoff-n states inside the (n + 2)-level space.
SpMat compression(int n) {
    const int big = n + 2;
    std::vector<Triplet> t;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t.emplace_back(index(a, b, n), index(a, b, big), 1.0);
    SpMat p(n * n, big * big);
    p.setFromTriplets(t.begin(), t.end());
    return p;
}

SpMat restrict_to(const SpMat& m, const std::vector<int>& idx) {
    std::vector<int> pos(std::size_t(m.rows()), -1);
    for (std::size_t i = 0; i < idx.size(); ++i) pos[std::size_t(idx[i])] = int(i);
    std::vector<Triplet> t;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) {
            const int r = pos[std::size_t(it.row())], c = pos[std::size_t(it.col())];
            if (r >= 0 && c >= 0) t.emplace_back(r, c, it.value());
        }
    SpMat out(int(idx.size()), int(idx.size()));
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

// Unit symmetric matrices spanning the quadratic forms, (a <= b).
std::vector<Mat4> quadratic_basis() {
    std::vector<Mat4> basis;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            Mat4 e = Mat4::Zero();
            e(a, b) = 1.0;
            e(b, a) = 1.0;
            basis.push_back(e);
        }
    return basis;
}

}  // namespace

SpMat phase_space_operator(int a, int n) {
    const SpMat op = single_mode(a % 2, n);
    return a < 2 ? kron(op, identity(n)) : kron(identity(n), op);
}

TruncatedOperator represent_quadratic(const Mat4& f, int n) {
    if (n < 4) fail(ErrorKind::Domain, "Fock cutoff must be at least 4");
    const int big = n + 2;
    std::array<SpMat, 4> x;
    for (int a = 0; a < 4; ++a) x[std::size_t(a)] = phase_space_operator(a, big);
    SpMat acc(big * big, big * big);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (f(a, b) != 0.0) acc += SpMat(x[std::size_t(a)] * x[std::size_t(b)]) * cplx(0.5 * f(a, b));
    const SpMat p = compression(n);
    TruncatedOperator op;
    op.matrix = p * acc * SpMat(p.transpose());
    op.matrix.prune(cplx(0.0));
    op.cutoff = n;
    return op;
}

TruncatedOperator represent_linear(const CRow4& c, int n) {
    SpMat acc(n * n, n * n);
    for (int a = 0; a < 4; ++a)
        if (c(a) != 0.0) acc += phase_space_operator(a, n) * c(a);
    return {acc, n};
}

std::vector<int> block_indices(int n, int max_occ) {
    std::vector<int> idx;
    for (int a = 0; a <= max_occ && a < n; ++a)
        for (int b = 0; b <= max_occ && b < n; ++b) idx.push_back(index(a, b, n));
    return idx;
}

CommutatorFit commutator_check(const Mat4& fa, const Mat4& fb, int n) {
    if (n < 8) fail(ErrorKind::Domain, "commutator_check needs a cutoff of at least 8");
    const SpMat a = represent_quadratic(fa, n).matrix;
    const SpMat b = represent_quadratic(fb, n).matrix;
    const SpMat c = SpMat(a * b - b * a) * cplx(-1.0i);

    CommutatorFit fit;
    fit.trusted_occupation = n - 5;
    const auto idx = block_indices(n, fit.trusted_occupation);
    const Eigen::MatrixXcd target = Eigen::MatrixXcd(restrict_to(c, idx));
    const auto basis = quadratic_basis();
    const Eigen::Index m = target.size();

    Eigen::MatrixXd design(2 * m, Eigen::Index(basis.size()) + 1);
    auto put = [&](Eigen::Index col, const Eigen::MatrixXcd& op) {
        const Eigen::Map<const Eigen::VectorXcd> v(op.data(), m);
        design.col(col).head(m) = v.real();
        design.col(col).tail(m) = v.imag();
    };
    for (std::size_t k = 0; k < basis.size(); ++k)
        put(Eigen::Index(k), Eigen::MatrixXcd(restrict_to(represent_quadratic(basis[k], n).matrix, idx)));
    put(Eigen::Index(basis.size()), Eigen::MatrixXcd::Identity(Eigen::Index(idx.size()), Eigen::Index(idx.size())));

    Eigen::VectorXd rhs(2 * m);
    const Eigen::Map<const Eigen::VectorXcd> tv(target.data(), m);
    rhs.head(m) = tv.real();
    rhs.tail(m) = tv.imag();
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);

    fit.g = Mat4::Zero();
    for (std::size_t k = 0; k < basis.size(); ++k) fit.g += coef(Eigen::Index(k)) * basis[k];
    fit.constant = coef(Eigen::Index(basis.size()));
    fit.fit_residual = (design * coef - rhs).cwiseAbs().maxCoeff();
    return fit;
}

TruncatedOperator hamiltonian_operator(const QuadraticForm& h, int n) {
    return represent_quadratic(2.0 * h.matrix(), n);
}

Eigenpairs diagonalize(const TruncatedOperator& op) {
    const Eigen::MatrixXcd dense(op.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (dense + dense.adjoint()));
    if (es.info() != Eigen::Success) fail(ErrorKind::Numerical, "dense Fock diagonalization failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

std::vector<double> hermite_at_origin(int n) {
    std::vector<double> h(std::size_t(n), 0.0);
    h[0] = std::pow(std::numbers::pi, -0.25);
    for (int k = 2; k < n; k += 2) h[std::size_t(k)] = -std::sqrt(double(k - 1) / k) * h[std::size_t(k - 2)];
    return h;
}

}  // namespace

cplx value_at_origin(const Vec& psi, int n) {
    const auto h = hermite_at_origin(n);
    cplx s = 0.0;
    for (int a = 0; a < n; a += 2)
        for (int b = 0; b < n; b += 2) s += psi(index(a, b, n)) * h[std::size_t(a)] * h[std::size_t(b)];
    return s;
}

Vec gauge_fix_origin(const Vec& psi, int n) {
    const cplx v = value_at_origin(psi, n);
    if (std::abs(v) < 1e-300) return psi;
    return psi * (std::conj(v) / std::abs(v));
}

double edge_population(const Vec& psi, int n, int margin) {
    double p = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a >= n - margin || b >= n - margin) p += std::norm(psi(index(a, b, n)));
    return p;
}

Vec expmv(const SpMat& a, const Vec& v, double dt, double tol) {
    double norm1 = 0.0;
    {
        Eigen::VectorXd colsum = Eigen::VectorXd::Zero(a.cols());
        for (int k = 0; k < a.outerSize(); ++k)
            for (SpMat::InnerIterator it(a, k); it; ++it) colsum(it.col()) += std::abs(it.value());
        norm1 = colsum.size() ? colsum.maxCoeff() : 0.0;
    }
    const int sub = std::max(1, int(std::ceil(norm1 * std::abs(dt) / 0.5)));
    const double h = dt / sub;
    Vec out = v;
    for (int s = 0; s < sub; ++s) {
        Vec term = out;
        Vec acc = out;
        const double base = std::max(out.norm(), 1e-300);
        for (int k = 1; k <= 80; ++k) {
            term = (a * term) * cplx(0.0, -h / k);
            acc += term;
            if (term.norm() < tol * base) break;
        }
        out = acc;
    }
    return out;
}

Vec propagate(const std::function<QuadraticForm(double)>& h_of_t, const Vec& psi0, double t0, double t1,
              int steps, int n, const PropagateOptions& opts) {
    if (steps < 1) fail(ErrorKind::Domain, "propagate needs at least one step");
    const auto basis = quadratic_basis();
    std::vector<SpMat> ops;
    for (const Mat4& e : basis) ops.push_back(represent_quadratic(e, n).matrix);
    const double dt = (t1 - t0) / steps;
    Vec psi = psi0;
    for (int s = 0; s < steps; ++s) {
        const double tm = t0 + (s + 0.5) * dt;
        const Mat4 f = 2.0 * h_of_t(tm).matrix();
        SpMat h(n * n, n * n);
        std::size_t k = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b, ++k)
                if (f(a, b) != 0.0) h += ops[k] * cplx(f(a, b));
        psi = expmv(h, psi, dt, opts.taylor_tol);
        const double leak = edge_population(psi, n);
        if (leak > opts.leak_tol) {
            std::ostringstream os;
            os << "population " << leak << " reached the Fock cutoff " << n << " at t = " << tm + 0.5 * dt;
            fail(ErrorKind::Numerical, os.str());
        }
    }
    return psi;
}

Vec gaussian_to_fock(const CMat2& lambda, double n0, int n) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(lambda.real());
    const double lmin = es.eigenvalues()(0);
    if (!(lmin > 0.0)) fail(ErrorKind::Positivity, "Gaussian is not normalizable");
    const double len = std::max(std::sqrt(2.0 * n + 1.0) + 7.0, std::sqrt(80.0 / lmin));
    const double h = std::min(0.05, 0.5 / std::sqrt(std::max(1.0, lambda.cwiseAbs().maxCoeff())));
    const int pts = 2 * int(std::ceil(len / h)) + 1;
    Eigen::VectorXd x(pts);
    for (int i = 0; i < pts; ++i) x(i) = -len + h * i;

    // normalized Hermite functions on the grid, columns n
    Eigen::MatrixXd herm(pts, n);
    for (int i = 0; i < pts; ++i) {
        const double xi = x(i);
        herm(i, 0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
        if (n > 1) herm(i, 1) = std::sqrt(2.0) * xi * herm(i, 0);
        for (int k = 1; k + 1 < n; ++k)
            herm(i, k + 1) = std::sqrt(2.0 / (k + 1)) * xi * herm(i, k) - std::sqrt(double(k) / (k + 1)) * herm(i, k - 1);
    }
    Eigen::MatrixXcd psi(pts, pts);
    const cplx l11 = lambda(0, 0), l22 = lambda(1, 1), l12 = 0.5 * (lambda(0, 1) + lambda(1, 0));
    for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j) {
            const double a = x(i), b = x(j);
            psi(i, j) = n0 * std::exp(-0.5 * (l11 * a * a + 2.0 * l12 * a * b + l22 * b * b));
        }
    const Eigen::MatrixXcd c = herm.transpose().cast<cplx>() * psi * herm.cast<cplx>() * (h * h);
    Vec out(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out(index(a, b, n)) = c(a, b);
    return out;
}

}  // namespace lrinv::fock
