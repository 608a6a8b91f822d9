#include "lrinv/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/interpolators/makima.hpp>

#include "lrinv/errors.hpp"

namespace lrinv {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Positivity: return "positivity";
        case ErrorKind::Regime: return "regime";
        case ErrorKind::Degenerate: return "degenerate";
        case ErrorKind::Conditioning: return "conditioning";
        case ErrorKind::Numerical: return "numerical";
        case ErrorKind::Config: return "config";
    }
    return "unknown";
}

TimeDomain TimeDomain::intersect(const TimeDomain& o) const {
    return {std::max(t0, o.t0), std::min(t1, o.t1)};
}

struct ParamSchedule::Interp {
    boost::math::interpolators::makima<std::vector<double>> spline;
};

ParamSchedule::ParamSchedule(Form form, TimeDomain domain)
    : form_(std::move(form)), domain_(domain) {
    if (auto* tab = std::get_if<Tabulated>(&form_)) {
        if (tab->t.size() != tab->y.size() || tab->t.size() < 4)
            fail(ErrorKind::Config, "tabulated schedule needs at least 4 (t, y) samples of equal length");
        if (!std::is_sorted(tab->t.begin(), tab->t.end()) ||
            std::adjacent_find(tab->t.begin(), tab->t.end()) != tab->t.end())
            fail(ErrorKind::Config, "tabulated schedule times must be strictly increasing");
        domain_ = domain_.intersect({tab->t.front(), tab->t.back()});
        auto x = tab->t;
        auto y = tab->y;
        interp_ = std::make_shared<Interp>(Interp{{std::move(x), std::move(y)}});
    }
    if (!(domain_.t0 <= domain_.t1))
        fail(ErrorKind::Config, "schedule domain is empty");
}

void ParamSchedule::check(double t) const {
    if (!domain_.contains(t)) {
        std::ostringstream os;
        os << "t = " << t << " outside schedule domain [" << domain_.t0 << ", " << domain_.t1 << "]";
        fail(ErrorKind::Domain, os.str());
    }
}

namespace {

struct Eval {
    double t;
    double operator()(const ParamSchedule::Constant& c) const { return c.value; }
    double operator()(const ParamSchedule::Polynomial& p) const {
        double r = 0.0;
        for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) r = r * t + *it;
        return r;
    }
    double operator()(const ParamSchedule::Sinusoid& s) const {
        return s.offset + s.amplitude * std::sin(s.frequency * t + s.phase);
    }
    double operator()(const ParamSchedule::Exponential& e) const {
        return e.offset + e.amplitude * std::exp(e.rate * t);
    }
    double operator()(const ParamSchedule::Tabulated&) const { return 0.0; }
};

struct Deriv {
    double t;
    double operator()(const ParamSchedule::Constant&) const { return 0.0; }
    double operator()(const ParamSchedule::Polynomial& p) const {
        double r = 0.0;
        for (std::size_t k = p.coefficients.size(); k-- > 1;) r = r * t + double(k) * p.coefficients[k];
        return r;
    }
    double operator()(const ParamSchedule::Sinusoid& s) const {
        return s.amplitude * s.frequency * std::cos(s.frequency * t + s.phase);
    }
    double operator()(const ParamSchedule::Exponential& e) const {
        return e.amplitude * e.rate * std::exp(e.rate * t);
    }
    double operator()(const ParamSchedule::Tabulated&) const { return 0.0; }
};

}  // namespace

double ParamSchedule::operator()(double t) const {
    check(t);
    if (interp_) return interp_->spline(t);
    return std::visit(Eval{t}, form_);
}

double ParamSchedule::derivative(double t) const {
    check(t);
    if (interp_) return interp_->spline.prime(t);
    return std::visit(Deriv{t}, form_);
}

std::string ParamSchedule::type_name() const {
    static const char* names[] = {"constant", "polynomial", "sinusoid", "exponential", "tabulated"};
    return names[form_.index()];
}

}  // namespace lrinv
