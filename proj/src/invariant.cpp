#include "lrinv/invariant.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "lrinv/errors.hpp"

namespace lrinv {

namespace odeint = boost::numeric::odeint;

InvariantCoefficients InvariantCoefficients::from_groups(const Eigen::Vector2d& w, const Vec4& u,
                                                         const Vec4& v) {
    InvariantCoefficients c;
    c.w12 = w(0);
    c.w21 = w(1);
    c.u11 = u(0);
    c.v11 = u(1);
    c.u22 = u(2);
    c.v22 = u(3);
    c.v12 = v(0);
    c.w22 = v(1);
    c.w11 = v(2);
    c.u12 = v(3);
    return c;
}

InvariantCoefficients InvariantCoefficients::operator+(const InvariantCoefficients& o) const {
    auto a = to_array();
    const auto b = o.to_array();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return from_array(a);
}

InvariantCoefficients InvariantCoefficients::operator*(double s) const {
    auto a = to_array();
    for (double& x : a) x *= s;
    return from_array(a);
}

double InvariantCoefficients::max_abs() const {
    double m = 0.0;
    for (double x : to_array()) m = std::max(m, std::abs(x));
    return m;
}

CoefficientMatrices coefficient_matrices(const Coupling& c, double nu_scale) {
    const double im1 = 1.0 / c.mu1, im2 = 1.0 / c.mu2;
    const double a1 = c.alpha1, a2 = c.alpha2;
    const double n1 = nu_scale * c.nu1, n2 = nu_scale * c.nu2;

    CoefficientMatrices m;
    m.mu << -im1, -im2,
            -n1,  -n2,
             n1,   n2,
             a2,   a1;
    m.alpha << 0,    0,    a1,   n2,
               n1,   0,    -im1, 0,
               0,    a2,   0,    -n1,
               -n2,  -im2, 0,    0;
    m.beta << 0,    -n2, 0,    n1,
              0,    0,   -im2, a2,
              -im1, a1,  0,    0,
              -n1,  0,   n2,   0;
    m.nu = nu_from_mu(m.mu);
    return m;
}

CoefficientMatrices coefficient_matrices(const PhysicalParams& p, double t) {
    return coefficient_matrices(derive_params(p, t).coupling());
}

Eigen::Matrix<double, 2, 4> nu_from_mu(const Eigen::Matrix<double, 4, 2>& mu) {
    return symplectic::sigma_x2() * mu.transpose() * symplectic::Sx();
}

InvariantCoefficients rhs(const InvariantCoefficients& c, const CoefficientMatrices& m) {
    const Eigen::Vector2d wd = m.nu * c.v();
    const Vec4 ud = 2.0 * m.alpha * c.v();
    const Vec4 vd = m.beta * c.u() + m.mu * c.w();
    return InvariantCoefficients::from_groups(wd, ud, vd);
}

InvariantCoefficients rhs(const InvariantCoefficients& c, const Coupling& k) {
    return rhs(c, coefficient_matrices(k));
}

InvariantCoefficients rhs(const InvariantCoefficients& c, const PhysicalParams& p, double t) {
    return rhs(c, coefficient_matrices(p, t));
}

QuadraticForm to_quadratic_form(const InvariantCoefficients& c) {
    Mat4 f;
    f << c.u11, c.w11, c.u12, c.w12,
         c.w11, c.v11, c.w21, c.v12,
         c.u12, c.w21, c.u22, c.w22,
         c.w12, c.v12, c.w22, c.v22;
    return QuadraticForm(f);
}

InvariantCoefficients from_quadratic_form(const QuadraticForm& q) {
    const Mat4& f = q.matrix();
    InvariantCoefficients c;
    c.u11 = f(0, 0);
    c.v11 = f(1, 1);
    c.u22 = f(2, 2);
    c.v22 = f(3, 3);
    c.w11 = f(0, 1);
    c.w22 = f(2, 3);
    c.u12 = f(0, 2);
    c.v12 = f(1, 3);
    c.w21 = f(1, 2);
    c.w12 = f(0, 3);
    return c;
}

InvariantCoefficients hamiltonian_coefficients(const QuadraticForm& h) { return from_quadratic_form(h); }

Mat4 bracket_metric() { return 2.0 * symplectic::mode_metric(); }

Mat4 bracket_derivative(const Mat4& f, const Mat4& h) {
    const Mat4 s = bracket_metric();
    return -(f * s * h - h * s * f);
}

double invariance_residual(const InvariantCoefficients& c, const InvariantCoefficients& cdot,
                           const QuadraticForm& h) {
    const Mat4 f = to_quadratic_form(c).matrix();
    const Mat4 fdot = to_quadratic_form(cdot).matrix();
    return (fdot - bracket_derivative(f, h.matrix())).cwiseAbs().maxCoeff();
}

double invariance_residual(const InvariantCoefficients& c, const InvariantCoefficients& cdot,
                           const PhysicalParams& p, double t) {
    return invariance_residual(c, cdot, hamiltonian_matrix(p, t));
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> t(n);
    if (n == 1) {
        t[0] = a;
        return t;
    }
    for (std::size_t i = 0; i < n; ++i) t[i] = a + (b - a) * double(i) / double(n - 1);
    t.back() = b;
    return t;
}

namespace {

using State10 = std::array<double, 10>;

void check_times(const HamiltonianModel& model, std::span<const double> times) {
    if (times.empty()) fail(ErrorKind::Domain, "no sample times requested");
    const TimeDomain d = model.domain();
    for (double t : times) {
        if (!std::isfinite(t) || !d.contains(t)) {
            std::ostringstream os;
            os << "sample time " << t << " leaves the parameter domain [" << d.t0 << ", " << d.t1 << "]";
            fail(ErrorKind::Domain, os.str());
        }
    }
    const bool up = times.back() >= times.front();
    for (std::size_t i = 1; i < times.size(); ++i)
        if (up ? times[i] < times[i - 1] : times[i] > times[i - 1])
            fail(ErrorKind::Domain, "sample times must be monotone");
}

// Runs odeint's dense-output dopri5 over `times`; observer receives (state, t).
template <class State, class System, class Observer>
void run_dense(System sys, State x, std::span<const double> times, const IntegratorOptions& opts,
               Observer obs) {
    using stepper_t = odeint::runge_kutta_dopri5<State>;
    const double span = times.back() - times.front();
    if (span == 0.0) {
        for (double t : times) obs(x, t);
        return;
    }
    const double dt = std::copysign(std::min(opts.initial_step, std::abs(span)), span);
    auto stepper = odeint::make_dense_output(opts.atol, opts.rtol, stepper_t());
    try {
        odeint::integrate_times(stepper, sys, x, times.begin(), times.end(), dt, obs,
                                odeint::max_step_checker(opts.max_steps));
    } catch (const odeint::step_adjustment_error& e) {
        fail(ErrorKind::Numerical, std::string("step-size underflow: ") + e.what());
    } catch (const odeint::no_progress_error& e) {
        fail(ErrorKind::Numerical, std::string("integrator made no progress: ") + e.what());
    } catch (const std::overflow_error& e) {
        fail(ErrorKind::Numerical, std::string("integrator step budget exhausted: ") + e.what());
    }
}

}  // namespace

std::vector<InvariantSample> integrate(const InvariantCoefficients& c0, const HamiltonianModel& model,
                                       std::span<const double> times, const IntegratorOptions& opts) {
    check_times(model, times);
    for (double x : c0.to_array())
        if (!std::isfinite(x)) fail(ErrorKind::Domain, "initial invariant coefficients are not finite");

    auto sys = [&model](const State10& x, State10& dxdt, double t) {
        dxdt = rhs(InvariantCoefficients::from_array(x), model.coupling(t)).to_array();
    };
    std::vector<InvariantSample> out;
    out.reserve(times.size());
    auto obs = [&](const State10& x, double t) {
        const auto c = InvariantCoefficients::from_array(x);
        for (double v : x)
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "invariant coefficients blew up at t = " << t;
                fail(ErrorKind::Numerical, os.str());
            }
        const auto cdot = rhs(c, model.coupling(t));
        out.push_back({t, c, cdot, invariance_residual(c, cdot, model.hamiltonian(t))});
    };
    run_dense(sys, c0.to_array(), times, opts, obs);
    return out;
}

std::vector<InvariantSample> integrate(const InvariantCoefficients& c0, const HamiltonianModel& model,
                                       double t0, double t1, std::size_t samples,
                                       const IntegratorOptions& opts) {
    if (samples < 2) fail(ErrorKind::Domain, "need at least two samples");
    const auto t = linspace(t0, t1, samples);
    return integrate(c0, model, t, opts);
}

Mat4 symplectic_propagator(const HamiltonianModel& model, double t0, double t1,
                           const IntegratorOptions& opts) {
    using State16 = std::array<double, 16>;
    const std::array<double, 2> times{t0, t1};
    check_times(model, times);
    const Mat4 j2 = 2.0 * symplectic::mode_metric();
    auto sys = [&](const State16& x, State16& dxdt, double t) {
        Eigen::Map<const Mat4> s(x.data());
        Eigen::Map<Mat4> ds(dxdt.data());
        ds = j2 * model.hamiltonian(t).matrix() * s;
    };
    State16 s0{};
    Eigen::Map<Mat4>(s0.data()) = Mat4::Identity();
    Mat4 result = Mat4::Identity();
    run_dense(sys, s0, times, opts, [&](const State16& x, double) { result = Eigen::Map<const Mat4>(x.data()); });
    return result;
}

}  // namespace lrinv
