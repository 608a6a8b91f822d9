#include "lrinv/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "lrinv/oracles.hpp"
#include "lrinv/pipeline.hpp"

namespace lrinv::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Config:
        case ErrorKind::Domain: return 2;
        case ErrorKind::Regime:
        case ErrorKind::Positivity:
        case ErrorKind::Degenerate: return 3;
        case ErrorKind::Numerical:
        case ErrorKind::Conditioning: return 4;
    }
    return 4;
}

RunConfig resolve(const Options& o) {
    RunConfig c = o.config ? load_config(*o.config) : RunConfig{};
    if (o.out) c.output_dir = *o.out;
    if (o.format) {
        if (*o.format != "csv" && *o.format != "json") fail(ErrorKind::Config, "format must be csv or json");
        c.format = *o.format;
    }
    if (o.cutoff) {
        if (*o.cutoff < 8 || *o.cutoff > 64) fail(ErrorKind::Config, "cutoff must lie in [8, 64]");
        c.cutoff = *o.cutoff;
    }
    if (o.tol) {
        if (!(*o.tol > 0)) fail(ErrorKind::Config, "tol must be positive");
        c.tol = *o.tol;
    }
    if (o.seed) c.seed = *o.seed;
    return c;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string header_block(const RunConfig& c, const std::string& command) {
    return std::string("# lrinv ") + kVersion + "\n# config_hash " + config_hash(c) + "\n# command " + command + "\n";
}

namespace {

std::string cell_text(const Cell& v) {
    struct V {
        std::string operator()(double d) const { return format_number(d); }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch == '\n' ? ' ' : ch);
            return q + "\"";
        }
    };
    return std::visit(V{}, v);
}

json cell_json(const Cell& v) {
    return std::visit([](const auto& x) -> json { return x; }, v);
}

json meta(const RunConfig& c, const std::string& command) {
    return {{"tool", "lrinv"}, {"version", kVersion}, {"config_hash", config_hash(c)}, {"command", command}};
}

std::string write_file(const RunConfig& c, const std::string& name, const std::string& content) {
    fs::create_directories(c.output_dir);
    const fs::path p = fs::path(c.output_dir) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) fail(ErrorKind::Config, "cannot write " + p.string());
    f << content;
    return p.string();
}

std::string write_table(const RunConfig& c, const std::string& stem, const Table& t, const std::string& command) {
    if (c.format == "json") return write_file(c, stem + ".json", to_json(t, c, command).dump(2) + "\n");
    return write_file(c, stem + ".csv", to_csv(t, c, command));
}

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::vector<double> sample_times(const RunConfig& c) {
    if (!(c.t0 < c.t1) || c.samples < 2) fail(ErrorKind::Config, "need t0 < t1 and samples >= 2");
    return linspace(c.t0, c.t1, c.samples);
}

std::string regime_diagnostic(const PipelineSample& s) {
    std::ostringstream m;
    m << "invariant left the physical regime at t = " << format_number(s.inv.t) << " (" << s.failure
      << "); stability product (alpha2 - 4 mu1 nu1^2)(alpha1 - 4 mu2 nu2^2) = "
      << format_number(s.tilde.stability_product);
    return m.str();
}

}  // namespace

std::string to_csv(const Table& t, const RunConfig& c, const std::string& command) {
    std::string s = header_block(c, command);
    for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
    s += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + cell_text(row[i]);
        s += "\n";
    }
    return s;
}

json to_json(const Table& t, const RunConfig& c, const std::string& command) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(r));
    }
    return {{"meta", meta(c, command)}, {"rows", std::move(rows)}};
}

json error_json(ErrorKind k, const std::string& message) {
    return {{"error", {{"kind", to_string(k)}, {"code", exit_code(k)}, {"message", message}}}};
}

SolveTables solve_tables(const RunConfig& c) {
    const HamiltonianModel model = make_model(c);
    PipelineOptions po;
    po.times = sample_times(c);
    po.initial = c.initial;
    po.integrator = c.integrator;
    po.phase_states = c.phase_states;
    const PipelineResult pr = run_pipeline(model, po);

    SolveTables out;
    out.trajectory.columns = {"t"};
    for (const char* n : InvariantCoefficients::names) out.trajectory.columns.push_back(n);
    out.trajectory.columns.push_back("residual");
    out.separability.columns = {"t",     "physical", "sigma1",       "sigma2",      "nu_sym1",    "nu_sym2",
                                "delta1", "delta2",  "delta12",      "tau",         "lhs_standard", "rhs_standard",
                                "rhs_printed", "lhs_ground_form", "separable", "ppt_nu_min"};
    json samples = json::array();
    for (const auto& s : pr.samples) {
        std::vector<Cell> row{s.inv.t};
        for (double v : s.inv.c.to_array()) row.emplace_back(v);
        row.emplace_back(s.inv.residual);
        out.trajectory.rows.push_back(std::move(row));

        const double nan = std::nan("");
        const auto& si = s.simon;
        out.separability.rows.push_back(
            {s.inv.t, s.physical, s.physical ? s.dec.sigma1 : nan, s.physical ? s.dec.sigma2 : nan,
             s.physical ? s.symplectic.first : nan, s.physical ? s.symplectic.second : nan, si.delta1, si.delta2,
             si.delta12, si.tau, si.lhs, si.rhs, si.rhs_printed, s.ground_inequality.lhs, si.separable,
             si.ppt_nu_min});

        json j = {{"t", s.inv.t},
                  {"physical", s.physical},
                  {"stable", s.tilde.stable},
                  {"stability_product", s.tilde.stability_product},
                  {"sigma_t1", s.tilde.sigma_t1},
                  {"sigma_t2", complex_json(s.tilde.sigma_t2)}};
        if (s.physical) {
            const auto& r = s.residuals;
            j["sigma1"] = s.dec.sigma1;
            j["sigma2"] = s.dec.sigma2;
            j["condition"] = s.dec.condition;
            j["closed_form_distance"] = s.closed_form_distance;
            j["residuals"] = {{"inverse", r.inverse},       {"q_dagger", r.q_dagger},
                              {"diagonal", r.diagonal},     {"ladder", r.ladder},
                              {"biorthonormality", r.biorthonormality}, {"sigma_form", r.sigma_form},
                              {"eigen_left", r.eigen_left}, {"block_identities", r.block_identities},
                              {"determinant_relations", r.determinant_relations}};
        } else {
            j["failure"] = s.failure;
        }
        samples.push_back(std::move(j));
    }
    out.spectral = {{"meta", meta(c, "solve")},
                    {"propagator_defect", pr.propagator_defect},
                    {"samples", std::move(samples)}};

    out.phases.columns = {"n1", "n2", "t", "theta_g", "theta_d", "theta", "energy", "theta_d_printed", "geometric_imag"};
    for (const auto& ph : pr.phases)
        for (std::size_t i = 0; i < ph.samples.size(); ++i) {
            const auto& p = ph.samples[i];
            out.phases.rows.push_back({(long long)ph.n1, (long long)ph.n2, p.t, p.theta_g, p.theta_d, ph.theta(i),
                                       p.energy, p.theta_d_printed, p.geometric_imag});
        }
    out.all_physical = pr.all_physical();
    if (!out.all_physical)
        for (const auto& s : pr.samples)
            if (!s.physical) {
                out.failure = regime_diagnostic(s);
                break;
            }
    return out;
}

std::vector<std::string> cmd_solve(const RunConfig& c) {
    const SolveTables t = solve_tables(c);
    std::vector<std::string> files;
    files.push_back(write_table(c, "trajectory", t.trajectory, "solve"));
    files.push_back(write_file(c, "spectral.json", t.spectral.dump(2) + "\n"));
    files.push_back(write_table(c, "separability", t.separability, "solve"));
    if (!t.all_physical) fail(ErrorKind::Regime, t.failure);
    files.push_back(write_table(c, "phases", t.phases, "solve"));
    return files;
}

Table sweep_table(const RunConfig& c, unsigned threads) {
    if (!c.sweep_x || !c.sweep_y) fail(ErrorKind::Config, "sweep needs outputs.sweep.x and outputs.sweep.y");
    const auto& xs = c.sweep_x->values;
    const auto& ys = c.sweep_y->values;
    if (xs.empty() || ys.empty()) fail(ErrorKind::Config, "sweep axes must be non-empty");
    if (xs.size() * ys.size() > 1'000'000) fail(ErrorKind::Config, "sweep grid exceeds 1e6 points");
    {
        // surface unknown axis names before spawning workers
        RunConfig probe = c;
        set_parameter(probe, c.sweep_x->param, xs.front());
        set_parameter(probe, c.sweep_y->param, ys.front());
    }

    Table t;
    t.columns = {c.sweep_x->param, c.sweep_y->param, "stable", "stability_product", "sigma_t1", "sigma_t2_re",
                 "sigma_t2_im", "sigma1", "sigma2", "delta1", "delta2", "delta12", "tau", "lhs_standard",
                 "rhs_standard", "rhs_printed", "lhs_ground_form", "separable", "ppt_nu_min", "status"};
    const std::size_t n = xs.size() * ys.size();
    t.rows.resize(n);
    const double nan = std::nan("");

    auto point = [&](std::size_t idx) {
        const double x = xs[idx / ys.size()], y = ys[idx % ys.size()];
        std::vector<Cell> row{x, y};
        try {
            RunConfig pc = c;
            set_parameter(pc, c.sweep_x->param, x);
            set_parameter(pc, c.sweep_y->param, y);
            const PipelineSample s = analyze_static(make_model(pc).coupling(pc.t0));
            const auto& si = s.simon;
            row.insert(row.end(), {s.tilde.stable, s.tilde.stability_product, s.tilde.sigma_t1,
                                   s.tilde.sigma_t2.real(), s.tilde.sigma_t2.imag()});
            if (s.physical)
                row.insert(row.end(), {s.dec.sigma1, s.dec.sigma2, si.delta1, si.delta2, si.delta12, si.tau, si.lhs,
                                       si.rhs, si.rhs_printed, s.ground_inequality.lhs, si.separable,
                                       si.ppt_nu_min, std::string("ok")});
            else
                row.insert(row.end(), {nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, false, nan, s.failure});
        } catch (const Error& e) {
            row.resize(2);
            row.insert(row.end(), {false, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, false,
                                   nan, std::string(to_string(e.kind())) + ": " + e.what()});
        }
        t.rows[idx] = std::move(row);
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = unsigned(std::min<std::size_t>(threads, n));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) point(i);
        });
    for (auto& th : pool) th.join();
    return t;
}

std::vector<std::string> cmd_sweep(const RunConfig& c) { return {write_table(c, "sweep", sweep_table(c), "sweep")}; }

Table spectrum_table(const RunConfig& c) {
    const HamiltonianModel model = make_model(c);
    const InvariantCoefficients inv = c.initial ? *c.initial : hamiltonian_coefficients(model.hamiltonian(c.t0));
    const SpectralDecomposition dec = decompose(inv);
    Table t;
    t.columns = {"n1", "n2", "energy", "sigma1", "sigma2"};
    for (const auto& e : spectrum(dec, c.spectrum_nmax))
        t.rows.push_back({(long long)e.n1, (long long)e.n2, e.energy, dec.sigma1, dec.sigma2});
    return t;
}

std::vector<std::string> cmd_spectrum(const RunConfig& c) {
    if (c.spectrum_nmax < 0) fail(ErrorKind::Config, "spectrum_nmax must be non-negative");
    return {write_table(c, "spectrum", spectrum_table(c), "spectrum")};
}

json verify_report(const RunConfig& c) {
    const HamiltonianModel model = make_model(c);
    const double t_end = std::min(c.t0 + c.verify_horizon, std::min(c.t1, model.domain().t1));
    if (!(t_end > c.t0)) fail(ErrorKind::Config, "verification horizon is empty");
    if (c.verify_steps < 2) fail(ErrorKind::Config, "verify.steps must be at least 2");
    json checks;
    bool pass = true;

    // commutator table at t0
    {
        auto rows = oracle::commutator_table(model.coupling(c.t0), c.cutoff);
        if (c.corrupt_coefficient) {
            rows[0].expected[0] += 0.05;
            rows[0].deviation = 0;
            for (std::size_t j = 0; j < 10; ++j)
                rows[0].deviation = std::max(rows[0].deviation, std::abs(rows[0].fitted[j] - rows[0].expected[j]));
        }
        double fit = 0, dev = 0, pdev = 0;
        json jr = json::array();
        for (const auto& r : rows) {
            fit = std::max(fit, r.fit_residual);
            dev = std::max(dev, r.deviation);
            pdev = std::max(pdev, r.printed_deviation);
            jr.push_back({{"operator", r.op}, {"fit_residual", r.fit_residual}, {"deviation", r.deviation},
                          {"printed_deviation", r.printed_deviation}, {"fitted", r.fitted}});
        }
        const bool ok = fit <= 1e-10 && dev <= c.tol;
        pass = pass && ok;
        checks["commutator_table"] = {{"pass", ok}, {"max_fit_residual", fit}, {"max_deviation", dev},
                                      {"max_printed_deviation", pdev}, {"corrupted", c.corrupt_coefficient},
                                      {"rows", std::move(jr)}};
    }

    PipelineOptions po;
    po.times = linspace(c.t0, t_end, std::size_t(c.verify_steps) + 1);
    po.initial = c.initial;
    po.integrator = c.integrator;
    const PipelineResult pr = run_pipeline(model, po);
    const PipelineSample& first = pr.samples.front();
    checks["stability"] = {{"stable", first.tilde.stable},
                           {"sigma_t2_imaginary", !first.tilde.stable},
                           {"sigma_t1", first.tilde.sigma_t1},
                           {"sigma_t2", complex_json(first.tilde.sigma_t2)},
                           {"stability_product", first.tilde.stability_product}};

    // ladder algebra and decomposition identities along the trajectory
    if (pr.all_physical()) {
        double ladder = 0, worst = 0, inv_res = 0;
        for (const auto& s : pr.samples) {
            ladder = std::max(ladder, s.residuals.ladder);
            worst = std::max(worst, s.residuals.max());
            inv_res = std::max(inv_res, s.inv.residual);
        }
        const bool ok = ladder <= c.tol && worst <= c.tol && inv_res <= c.tol;
        pass = pass && ok;
        checks["ladder_algebra"] = {{"pass", ok}, {"skipped", false}, {"max_ladder", ladder},
                                    {"max_decomposition_residual", worst}, {"max_invariance_residual", inv_res},
                                    {"propagator_defect", pr.propagator_defect}};
        const auto a = oracle::annihilation_check(first.dec, c.cutoff);
        const bool aok = std::max(a.residual1, a.residual2) <= 1e-6;
        pass = pass && aok;
        checks["annihilation"] = {{"pass", aok}, {"skipped", false}, {"residual1", a.residual1},
                                  {"residual2", a.residual2}, {"truncated_norm", a.norm},
                                  {"cutoff", a.cutoff}, {"edge_population", a.edge}};
    } else {
        std::string why;
        for (const auto& s : pr.samples)
            if (!s.physical) {
                why = regime_diagnostic(s);
                break;
            }
        checks["ladder_algebra"] = {{"pass", false}, {"skipped", true}, {"reason", why}};
        checks["annihilation"] = {{"pass", false}, {"skipped", true}, {"reason", why}};
    }

    // LR phase against the Fock propagator
    {
        const int cps = c.verify_steps % 10 == 0 ? 10 : 1;
        const auto r = oracle::lr_phase_check(model, c.t0, t_end, c.verify_steps, cps, c.cutoff, c.integrator);
        json j = {{"skipped", r.skipped}};
        if (r.skipped) {
            j["pass"] = false;
            j["reason"] = r.reason;
        } else {
            const bool ok = r.min_fidelity >= 1 - 1e-4 && r.max_phase_error <= 1e-4;
            pass = pass && ok;
            j["pass"] = ok;
            j["min_fidelity"] = r.min_fidelity;
            j["max_phase_error"] = r.max_phase_error;
            j["max_geometric_imag"] = r.max_geometric_imag;
            json cp = json::array();
            for (const auto& k : r.checkpoints)
                cp.push_back({{"t", k.t}, {"fidelity", k.fidelity}, {"fock_phase", k.fock_phase},
                              {"lr_phase", k.lr_phase}, {"phase_error", k.phase_error}});
            j["checkpoints"] = std::move(cp);
        }
        checks["lr_phase"] = std::move(j);
    }

    // Simon criterion against the partial-transpose eigenvalue
    {
        oracle::Rng rng(c.seed);
        const auto s = oracle::simon_vs_ppt(rng, c.draws);
        const SimonInvariants vac = simon_criterion(0.5 * Mat4::Identity());
        const bool ok = s.disagreements == 0 && std::abs(vac.lhs - vac.rhs) <= 1e-12;
        pass = pass && ok;
        checks["simon_vs_ppt"] = {{"pass", ok},
                                  {"draws", s.draws},
                                  {"disagreements", s.disagreements},
                                  {"separable", s.separable},
                                  {"vacuum_margin", vac.lhs - vac.rhs},
                                  {"vacuum_printed_rhs_holds", vac.printed_form_holds}};
    }

    // skipped checks do not fail the report; the reason is recorded instead
    return {{"meta", meta(c, "verify")}, {"pass", pass}, {"checks", std::move(checks)}};
}

json cmd_verify(const RunConfig& c) {
    json r = verify_report(c);
    write_file(c, "verify.json", r.dump(2) + "\n");
    return r;
}

int run(const Options& o, std::ostream& out, std::ostream& err) {
    std::optional<std::string> out_dir = o.out;
    auto report = [&](ErrorKind k, const std::string& msg) {
        const json e = error_json(k, msg);
        err << e.dump() << "\n";
        if (out_dir) {
            try {
                fs::create_directories(*out_dir);
                std::ofstream(fs::path(*out_dir) / "error.json") << e.dump(2) << "\n";
            } catch (const std::exception&) {
            }
        }
        return exit_code(k);
    };
    try {
        const RunConfig c = resolve(o);
        out_dir = c.output_dir;
        if (o.command == "solve" || o.command == "sweep" || o.command == "spectrum") {
            const auto files = o.command == "solve"   ? cmd_solve(c)
                               : o.command == "sweep" ? cmd_sweep(c)
                                                      : cmd_spectrum(c);
            for (const auto& f : files) out << f << "\n";
            return kExitOk;
        }
        if (o.command == "verify") {
            const json r = cmd_verify(c);
            for (const auto& [name, check] : r["checks"].items()) {
                if (!check.contains("pass")) continue;
                const bool skipped = check.value("skipped", false);
                out << (skipped ? "SKIP " : check["pass"].get<bool>() ? "PASS " : "FAIL ") << name;
                if (skipped) out << " (" << check["reason"].get<std::string>() << ")";
                out << "\n";
            }
            return r["pass"].get<bool>() ? kExitOk : kExitChecksFailed;
        }
        return report(ErrorKind::Config, "unknown command '" + o.command + "'");
    } catch (const Error& e) {
        return report(e.kind(), e.what());
    } catch (const json::exception& e) {
        return report(ErrorKind::Config, e.what());
    } catch (const fs::filesystem_error& e) {
        return report(ErrorKind::Config, e.what());
    } catch (const std::exception& e) {
        return report(ErrorKind::Numerical, e.what());
    }
}

}  // namespace lrinv::cli
