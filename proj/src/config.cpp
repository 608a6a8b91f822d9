#include "lrinv/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "lrinv/errors.hpp"

namespace lrinv {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::Config, what); }

double number(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key)) bad(ctx + ": missing '" + key + "'");
    if (!j.at(key).is_number()) bad(ctx + ": '" + key + "' must be a number");
    const double v = j.at(key).get<double>();
    if (!std::isfinite(v)) bad(ctx + ": '" + key + "' must be finite");
    return v;
}

double number_or(const json& j, const char* key, double dflt, const std::string& ctx) {
    return j.contains(key) ? number(j, key, ctx) : dflt;
}

std::vector<double> numbers(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_array()) bad(ctx + ": '" + key + "' must be an array of numbers");
    std::vector<double> v;
    for (const auto& x : j.at(key)) {
        if (!x.is_number()) bad(ctx + ": '" + key + "' must contain only numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& ctx) {
    if (!j.is_object()) bad(ctx + " must be an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) bad(ctx + ": unknown key '" + it.key() + "'");
}

}  // namespace

json schedule_to_json(const ParamSchedule& s) {
    json j;
    std::visit(
        [&j](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ParamSchedule::Constant>) {
                j = {{"type", "constant"}, {"value", f.value}};
            } else if constexpr (std::is_same_v<T, ParamSchedule::Polynomial>) {
                j = {{"type", "polynomial"}, {"coefficients", f.coefficients}};
            } else if constexpr (std::is_same_v<T, ParamSchedule::Sinusoid>) {
                j = {{"type", "sinusoid"}, {"offset", f.offset}, {"amplitude", f.amplitude},
                     {"frequency", f.frequency}, {"phase", f.phase}};
            } else if constexpr (std::is_same_v<T, ParamSchedule::Exponential>) {
                j = {{"type", "exponential"}, {"offset", f.offset}, {"amplitude", f.amplitude}, {"rate", f.rate}};
            } else {
                j = {{"type", "tabulated"}, {"t", f.t}, {"y", f.y}};
            }
        },
        s.form());
    const TimeDomain& d = s.domain();
    if (std::isfinite(d.t0) || std::isfinite(d.t1)) {
        if (!std::holds_alternative<ParamSchedule::Tabulated>(s.form())) j["domain"] = {d.t0, d.t1};
    }
    return j;
}

ParamSchedule schedule_from_json(const json& j, const std::string& name) {
    if (j.is_number()) return ParamSchedule::constant(j.get<double>());
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        bad("schedule '" + name + "' must be a number or an object with a 'type'");
    const std::string type = j.at("type").get<std::string>();
    const std::string ctx = "schedule '" + name + "'";
    TimeDomain dom;
    if (j.contains("domain")) {
        const auto d = numbers(j, "domain", ctx);
        if (d.size() != 2 || !(d[0] < d[1])) bad(ctx + ": 'domain' must be [t0, t1] with t0 < t1");
        dom = {d[0], d[1]};
    }
    if (type == "constant") {
        only_keys(j, {"type", "value", "domain"}, ctx);
        return ParamSchedule(ParamSchedule::Constant{number(j, "value", ctx)}, dom);
    }
    if (type == "polynomial") {
        only_keys(j, {"type", "coefficients", "domain"}, ctx);
        return ParamSchedule(ParamSchedule::Polynomial{numbers(j, "coefficients", ctx)}, dom);
    }
    if (type == "sinusoid") {
        only_keys(j, {"type", "offset", "amplitude", "frequency", "phase", "domain"}, ctx);
        return ParamSchedule(ParamSchedule::Sinusoid{number_or(j, "offset", 0.0, ctx), number(j, "amplitude", ctx),
                                                     number(j, "frequency", ctx), number_or(j, "phase", 0.0, ctx)},
                             dom);
    }
    if (type == "exponential") {
        only_keys(j, {"type", "offset", "amplitude", "rate", "domain"}, ctx);
        return ParamSchedule(ParamSchedule::Exponential{number_or(j, "offset", 0.0, ctx), number(j, "amplitude", ctx),
                                                        number(j, "rate", ctx)},
                             dom);
    }
    if (type == "tabulated") {
        only_keys(j, {"type", "t", "y", "domain"}, ctx);
        return ParamSchedule(ParamSchedule::Tabulated{numbers(j, "t", ctx), numbers(j, "y", ctx)}, dom);
    }
    bad(ctx + ": unknown type '" + type + "'");
}

namespace {

const std::vector<std::string> kPhysicalNames{"mu1", "mu2", "k1", "k2", "alpha01", "alpha02"};
const std::vector<std::string> kNCNames{"m1", "m2", "omega1", "omega2"};

ParamSchedule* physical_slot(PhysicalParams& p, const std::string& n) {
    if (n == "mu1") return &p.mu1;
    if (n == "mu2") return &p.mu2;
    if (n == "k1") return &p.k1;
    if (n == "k2") return &p.k2;
    if (n == "alpha01") return &p.alpha01;
    if (n == "alpha02") return &p.alpha02;
    return nullptr;
}

ParamSchedule* nc_slot(NCParams& p, const std::string& n) {
    if (n == "m1") return &p.m1;
    if (n == "m2") return &p.m2;
    if (n == "omega1") return &p.omega1;
    if (n == "omega2") return &p.omega2;
    return nullptr;
}

SweepAxis parse_axis(const json& j, const std::string& ctx) {
    only_keys(j, {"param", "values", "min", "max", "count"}, ctx);
    if (!j.contains("param") || !j.at("param").is_string()) bad(ctx + ": 'param' must be a string");
    SweepAxis a;
    a.param = j.at("param").get<std::string>();
    if (j.contains("values")) {
        a.values = numbers(j, "values", ctx);
    } else {
        const double lo = number(j, "min", ctx), hi = number(j, "max", ctx);
        if (!j.contains("count") || !j.at("count").is_number_integer() || j.at("count").get<long>() < 1)
            bad(ctx + ": 'count' must be a positive integer");
        a.values = linspace(lo, hi, std::size_t(j.at("count").get<long>()));
    }
    if (a.values.empty()) bad(ctx + ": empty sweep axis");
    return a;
}

json axis_to_json(const SweepAxis& a) { return {{"param", a.param}, {"values", a.values}}; }

}  // namespace

RunConfig parse_config(const json& j) {
    RunConfig c;
    only_keys(j, {"parameters", "time", "invariant", "integrator", "outputs", "output", "verify"}, "config");
    if (!j.contains("parameters")) bad("config: missing 'parameters'");
    const json& pj = j.at("parameters");
    only_keys(pj, {"physical", "noncommutative"}, "parameters");
    if (pj.contains("physical") == pj.contains("noncommutative"))
        bad("parameters: exactly one of 'physical' or 'noncommutative' must be given");
    if (pj.contains("physical")) {
        const json& ph = pj.at("physical");
        only_keys(ph, {"mu1", "mu2", "k1", "k2", "alpha01", "alpha02", "e"}, "parameters.physical");
        PhysicalParams p;
        for (const auto& n : kPhysicalNames)
            if (ph.contains(n)) *physical_slot(p, n) = schedule_from_json(ph.at(n), n);
        p.e = number_or(ph, "e", 1.0, "parameters.physical");
        c.params = p;
    } else {
        const json& nj = pj.at("noncommutative");
        only_keys(nj, {"theta", "eta", "m1", "m2", "omega1", "omega2"}, "parameters.noncommutative");
        NCParams p;
        for (const char* k : {"theta", "eta"})
            if (nj.contains(k) && !nj.at(k).is_number())
                bad(std::string("parameters.noncommutative: '") + k +
                    "' must be a constant number (time-dependent theta, eta are not supported)");
        p.theta = number_or(nj, "theta", 0.0, "parameters.noncommutative");
        p.eta = number_or(nj, "eta", 0.0, "parameters.noncommutative");
        for (const auto& n : kNCNames)
            if (nj.contains(n)) *nc_slot(p, n) = schedule_from_json(nj.at(n), n);
        c.params = p;
    }

    if (j.contains("time")) {
        const json& t = j.at("time");
        only_keys(t, {"t0", "t1", "samples"}, "time");
        c.t0 = number_or(t, "t0", c.t0, "time");
        c.t1 = number_or(t, "t1", c.t1, "time");
        if (t.contains("samples")) {
            if (!t.at("samples").is_number_integer()) bad("time: 'samples' must be an integer");
            const long s = t.at("samples").get<long>();
            if (s < 2) bad("time: 'samples' must be at least 2");
            c.samples = std::size_t(s);
        }
    }
    if (!(c.t0 < c.t1)) bad("time: t0 < t1 required");

    if (j.contains("invariant")) {
        const json& iv = j.at("invariant");
        only_keys(iv, {"initial", "coefficients"}, "invariant");
        const std::string init = iv.value("initial", std::string("hamiltonian"));
        if (init == "explicit") {
            if (!iv.contains("coefficients")) bad("invariant: explicit initial invariant needs 'coefficients'");
            const json& cj = iv.at("coefficients");
            std::array<double, 10> a{};
            for (std::size_t i = 0; i < a.size(); ++i)
                a[i] = number_or(cj, InvariantCoefficients::names[i], 0.0, "invariant.coefficients");
            for (auto it = cj.begin(); it != cj.end(); ++it) {
                bool known = false;
                for (const char* n : InvariantCoefficients::names) known = known || it.key() == n;
                if (!known) bad("invariant.coefficients: unknown key '" + it.key() + "'");
            }
            c.initial = InvariantCoefficients::from_array(a);
        } else if (init != "hamiltonian") {
            bad("invariant: 'initial' must be 'hamiltonian' or 'explicit'");
        }
    }

    if (j.contains("integrator")) {
        const json& ij = j.at("integrator");
        only_keys(ij, {"rtol", "atol", "initial_step"}, "integrator");
        c.integrator.rtol = number_or(ij, "rtol", c.integrator.rtol, "integrator");
        c.integrator.atol = number_or(ij, "atol", c.integrator.atol, "integrator");
        c.integrator.initial_step = number_or(ij, "initial_step", c.integrator.initial_step, "integrator");
        if (!(c.integrator.rtol > 0 && c.integrator.atol > 0 && c.integrator.initial_step > 0))
            bad("integrator: tolerances and step must be positive");
    }

    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        only_keys(o, {"spectrum_nmax", "phase_states", "sweep"}, "outputs");
        if (o.contains("spectrum_nmax")) {
            if (!o.at("spectrum_nmax").is_number_integer() || o.at("spectrum_nmax").get<int>() < 0)
                bad("outputs: 'spectrum_nmax' must be a non-negative integer");
            c.spectrum_nmax = o.at("spectrum_nmax").get<int>();
        }
        if (o.contains("phase_states")) {
            c.phase_states.clear();
            for (const auto& s : o.at("phase_states")) {
                if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer() ||
                    s[0].get<int>() < 0 || s[1].get<int>() < 0)
                    bad("outputs: 'phase_states' entries must be [n1, n2] with non-negative integers");
                c.phase_states.emplace_back(s[0].get<int>(), s[1].get<int>());
            }
        }
        if (o.contains("sweep")) {
            const json& sw = o.at("sweep");
            only_keys(sw, {"x", "y"}, "outputs.sweep");
            if (sw.contains("x")) c.sweep_x = parse_axis(sw.at("x"), "outputs.sweep.x");
            if (sw.contains("y")) c.sweep_y = parse_axis(sw.at("y"), "outputs.sweep.y");
        }
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        only_keys(o, {"directory", "format"}, "output");
        c.output_dir = o.value("directory", c.output_dir);
        c.format = o.value("format", c.format);
    }
    if (c.format != "csv" && c.format != "json") bad("output: 'format' must be 'csv' or 'json'");

    if (j.contains("verify")) {
        const json& v = j.at("verify");
        only_keys(v, {"cutoff", "seed", "draws", "tol", "horizon", "steps", "corrupt_coefficient"}, "verify");
        c.cutoff = v.value("cutoff", c.cutoff);
        c.seed = v.value("seed", c.seed);
        c.draws = v.value("draws", c.draws);
        c.tol = number_or(v, "tol", c.tol, "verify");
        c.verify_horizon = number_or(v, "horizon", c.verify_horizon, "verify");
        c.verify_steps = v.value("steps", c.verify_steps);
        c.corrupt_coefficient = v.value("corrupt_coefficient", c.corrupt_coefficient);
        if (c.cutoff < 8 || c.cutoff > 64) bad("verify: 'cutoff' must lie in [8, 64]");
        if (c.draws < 1 || c.verify_steps < 1 || !(c.verify_horizon > 0)) bad("verify: draws, steps, horizon must be positive");
    }
    return c;
}

json to_json(const RunConfig& c) {
    json j;
    if (const auto* p = std::get_if<PhysicalParams>(&c.params)) {
        json ph;
        PhysicalParams q = *p;
        for (const auto& n : kPhysicalNames) ph[n] = schedule_to_json(*physical_slot(q, n));
        ph["e"] = p->e;
        j["parameters"]["physical"] = ph;
    } else {
        NCParams q = std::get<NCParams>(c.params);
        json nj;
        nj["theta"] = q.theta;
        nj["eta"] = q.eta;
        for (const auto& n : kNCNames) nj[n] = schedule_to_json(*nc_slot(q, n));
        j["parameters"]["noncommutative"] = nj;
    }
    j["time"] = {{"t0", c.t0}, {"t1", c.t1}, {"samples", c.samples}};
    if (c.initial) {
        json cj;
        const auto a = c.initial->to_array();
        for (std::size_t i = 0; i < a.size(); ++i) cj[InvariantCoefficients::names[i]] = a[i];
        j["invariant"] = {{"initial", "explicit"}, {"coefficients", cj}};
    } else {
        j["invariant"] = {{"initial", "hamiltonian"}};
    }
    j["integrator"] = {{"rtol", c.integrator.rtol}, {"atol", c.integrator.atol},
                       {"initial_step", c.integrator.initial_step}};
    json states = json::array();
    for (const auto& [a, b] : c.phase_states) states.push_back({a, b});
    j["outputs"] = {{"spectrum_nmax", c.spectrum_nmax}, {"phase_states", states}};
    if (c.sweep_x) j["outputs"]["sweep"]["x"] = axis_to_json(*c.sweep_x);
    if (c.sweep_y) j["outputs"]["sweep"]["y"] = axis_to_json(*c.sweep_y);
    j["output"] = {{"directory", c.output_dir}, {"format", c.format}};
    j["verify"] = {{"cutoff", c.cutoff},   {"seed", c.seed},         {"draws", c.draws},
                   {"tol", c.tol},         {"horizon", c.verify_horizon}, {"steps", c.verify_steps},
                   {"corrupt_coefficient", c.corrupt_coefficient}};
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return parse_config(j);
    } catch (const json::exception& e) {
        bad(std::string("config has a value of the wrong type: ") + e.what());
    }
}

std::string config_hash(const RunConfig& c) {
    // where artifacts land does not change what they contain
    json j = to_json(c);
    if (j.contains("output")) j["output"].erase("directory");
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

HamiltonianModel make_model(const RunConfig& c) {
    return std::visit([](const auto& p) { return HamiltonianModel(p); }, c.params);
}

void set_parameter(RunConfig& c, const std::string& name, double value) {
    if (auto* p = std::get_if<PhysicalParams>(&c.params)) {
        if (name == "e") {
            p->e = value;
            return;
        }
        if (ParamSchedule* s = physical_slot(*p, name)) {
            *s = ParamSchedule::constant(value);
            return;
        }
    } else {
        auto& q = std::get<NCParams>(c.params);
        if (name == "theta") {
            q.theta = value;
            return;
        }
        if (name == "eta") {
            q.eta = value;
            return;
        }
        if (ParamSchedule* s = nc_slot(q, name)) {
            *s = ParamSchedule::constant(value);
            return;
        }
    }
    bad("sweep parameter '" + name + "' does not exist for this parameter block");
}

}  // namespace lrinv
