#include "lrinv/model.hpp"

#include <sstream>

#include "lrinv/errors.hpp"

namespace lrinv {

TimeDomain PhysicalParams::domain() const {
    return mu1.domain()
        .intersect(mu2.domain())
        .intersect(k1.domain())
        .intersect(k2.domain())
        .intersect(alpha01.domain())
        .intersect(alpha02.domain());
}

TimeDomain NCParams::domain() const {
    return m1.domain().intersect(m2.domain()).intersect(omega1.domain()).intersect(omega2.domain());
}

namespace {

void require_positive_mass(double m, const char* name, double t) {
    if (!(m > 0.0)) {
        std::ostringstream os;
        os << name << "(" << t << ") = " << m << " is not positive";
        fail(ErrorKind::Positivity, os.str());
    }
}

}  // namespace

DerivedParams derive_params(const PhysicalParams& p, double t) {
    DerivedParams d{};
    d.mu1 = p.mu1(t);
    d.mu2 = p.mu2(t);
    require_positive_mass(d.mu1, "mu1", t);
    require_positive_mass(d.mu2, "mu2", t);
    const double a01 = p.alpha01(t), a02 = p.alpha02(t);
    d.nu1 = p.e * a01 / (2.0 * d.mu1);
    d.nu2 = p.e * a02 / (2.0 * d.mu2);
    d.k01 = p.e * p.e * a01 * a01 / d.mu1;
    d.k02 = p.e * p.e * a02 * a02 / d.mu2;
    d.alpha1 = p.k1(t) + 4.0 * d.mu2 * d.nu2 * d.nu2;
    d.alpha2 = p.k2(t) + 4.0 * d.mu1 * d.nu1 * d.nu1;
    return d;
}

QuadraticForm hamiltonian_matrix(const Coupling& c) {
    Mat4 h = Mat4::Zero();
    h(0, 0) = c.alpha1 / 2.0;
    h(1, 1) = 1.0 / (2.0 * c.mu1);
    h(2, 2) = c.alpha2 / 2.0;
    h(3, 3) = 1.0 / (2.0 * c.mu2);
    h(0, 3) = h(3, 0) = -c.nu2;
    h(1, 2) = h(2, 1) = c.nu1;
    return QuadraticForm(h);
}

QuadraticForm hamiltonian_matrix(const PhysicalParams& p, double t) {
    return hamiltonian_matrix(derive_params(p, t).coupling());
}

Coupling nc_to_physical(const NCParams& nc, double t) {
    const double m1 = nc.m1(t), m2 = nc.m2(t);
    require_positive_mass(m1, "m1", t);
    require_positive_mass(m2, "m2", t);
    const double w1 = nc.omega1(t), w2 = nc.omega2(t);
    const double th = nc.theta, eta = nc.eta;

    const double inv_mu1 = 1.0 / m1 + m2 * w2 * w2 * th * th / 4.0;
    const double inv_mu2 = 1.0 / m2 + m1 * w1 * w1 * th * th / 4.0;
    Coupling c;
    c.mu1 = 1.0 / inv_mu1;
    c.mu2 = 1.0 / inv_mu2;
    c.alpha1 = m1 * w1 * w1 + eta * eta / (4.0 * m2);
    c.alpha2 = m2 * w2 * w2 + eta * eta / (4.0 * m1);
    c.nu1 = (eta + m1 * m2 * w2 * w2 * th) / (4.0 * m1);
    c.nu2 = (eta + m1 * m2 * w1 * w1 * th) / (4.0 * m2);
    return c;
}

PhysicalParams to_physical_params(const NCParams& nc, std::span<const double> times, double e) {
    if (e == 0.0) fail(ErrorKind::Domain, "charge e = 0 cannot carry a nonzero NC field coupling");
    auto field = [e](const Coupling& c, int j) {
        return j == 1 ? 2.0 * c.mu1 * c.nu1 / e : 2.0 * c.mu2 * c.nu2 / e;
    };

    PhysicalParams p;
    p.e = e;
    const bool constant = nc.m1.is_constant() && nc.m2.is_constant() &&
                          nc.omega1.is_constant() && nc.omega2.is_constant();
    if (constant) {
        const Coupling c = nc_to_physical(nc, 0.0);
        p.mu1 = c.mu1;
        p.mu2 = c.mu2;
        p.k1 = c.k1();
        p.k2 = c.k2();
        p.alpha01 = field(c, 1);
        p.alpha02 = field(c, 2);
        return p;
    }
    if (times.size() < 4)
        fail(ErrorKind::Domain, "time-dependent NC schedules need at least 4 sample times to reconstruct k_j(t)");

    std::vector<double> t(times.begin(), times.end());
    std::vector<double> mu1, mu2, k1, k2, a01, a02;
    for (double s : t) {
        const Coupling c = nc_to_physical(nc, s);
        mu1.push_back(c.mu1);
        mu2.push_back(c.mu2);
        k1.push_back(c.k1());
        k2.push_back(c.k2());
        a01.push_back(field(c, 1));
        a02.push_back(field(c, 2));
    }
    auto tab = [&t](std::vector<double> y) {
        return ParamSchedule(ParamSchedule::Tabulated{t, std::move(y)});
    };
    p.mu1 = tab(mu1);
    p.mu2 = tab(mu2);
    p.k1 = tab(k1);
    p.k2 = tab(k2);
    p.alpha01 = tab(a01);
    p.alpha02 = tab(a02);
    return p;
}

Mat4 bopp_shift_map(const NCParams& nc) {
    // X1 = x1 - (theta/2) p2,  P1 = p1 + (eta/2) x2
    // X2 = x2 + (theta/2) p1,  P2 = p2 - (eta/2) x1
    Mat4 m = Mat4::Identity();
    m(0, 3) = -nc.theta / 2.0;
    m(1, 2) = nc.eta / 2.0;
    m(2, 1) = nc.theta / 2.0;
    m(3, 0) = -nc.eta / 2.0;
    return m;
}

QuadraticForm nc_hamiltonian_matrix(const NCParams& nc, double t) {
    const double m1 = nc.m1(t), m2 = nc.m2(t);
    require_positive_mass(m1, "m1", t);
    require_positive_mass(m2, "m2", t);
    const double w1 = nc.omega1(t), w2 = nc.omega2(t);
    const Vec4 d(m1 * w1 * w1 / 2.0, 1.0 / (2.0 * m1), m2 * w2 * w2 / 2.0, 1.0 / (2.0 * m2));
    const Mat4 m = bopp_shift_map(nc);
    return QuadraticForm(m.transpose() * d.asDiagonal() * m);
}

Coupling HamiltonianModel::coupling(double t) const {
    if (auto* p = std::get_if<PhysicalParams>(&params_)) return derive_params(*p, t).coupling();
    return nc_to_physical(std::get<NCParams>(params_), t);
}

QuadraticForm HamiltonianModel::hamiltonian(double t) const {
    if (auto* p = std::get_if<PhysicalParams>(&params_)) return hamiltonian_matrix(*p, t);
    return nc_hamiltonian_matrix(std::get<NCParams>(params_), t);
}

TimeDomain HamiltonianModel::domain() const {
    return std::visit([](const auto& p) { return p.domain(); }, params_);
}

bool HamiltonianModel::is_static() const {
    if (auto* p = std::get_if<PhysicalParams>(&params_))
        return p->mu1.is_constant() && p->mu2.is_constant() && p->k1.is_constant() &&
               p->k2.is_constant() && p->alpha01.is_constant() && p->alpha02.is_constant();
    const auto& nc = std::get<NCParams>(params_);
    return nc.m1.is_constant() && nc.m2.is_constant() && nc.omega1.is_constant() &&
           nc.omega2.is_constant();
}

}  // namespace lrinv
