#pragma once

#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace lrinv {

struct TimeDomain {
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();

    bool contains(double t) const { return t >= t0 && t <= t1; }
    TimeDomain intersect(const TimeDomain& o) const;
};

// Scalar function of time. Analytic forms carry exact derivatives; tabulated
// samples use modified Akima interpolation, which is C1.
class ParamSchedule {
public:
    struct Constant { double value = 0.0; };
    struct Polynomial { std::vector<double> coefficients; };  // sum c_k t^k
    struct Sinusoid { double offset = 0, amplitude = 0, frequency = 0, phase = 0; };
    struct Exponential { double offset = 0, amplitude = 0, rate = 0; };
    struct Tabulated { std::vector<double> t, y; };
    using Form = std::variant<Constant, Polynomial, Sinusoid, Exponential, Tabulated>;

    ParamSchedule() : ParamSchedule(Constant{0.0}) {}
    ParamSchedule(double value) : ParamSchedule(Constant{value}) {}
    explicit ParamSchedule(Form form, TimeDomain domain = {});

    static ParamSchedule constant(double v) { return ParamSchedule(Constant{v}); }
    static ParamSchedule sinusoid(double offset, double amplitude, double frequency,
                                  double phase = 0.0) {
        return ParamSchedule(Sinusoid{offset, amplitude, frequency, phase});
    }

    double operator()(double t) const;
    double derivative(double t) const;

    bool is_constant() const { return std::holds_alternative<Constant>(form_); }
    const Form& form() const { return form_; }
    const TimeDomain& domain() const { return domain_; }
    std::string type_name() const;

private:
    struct Interp;
    void check(double t) const;

    Form form_;
    TimeDomain domain_;
    std::shared_ptr<const Interp> interp_;
};

}  // namespace lrinv
