#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lrinv/cli.hpp"

using namespace lrinv;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("lrinv_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path write_config(const fs::path& dir, const json& j) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << j.dump(2);
    return p;
}

json physical(json params) {
    return {{"parameters", {{"physical", std::move(params)}}}, {"time", {{"t0", 0.0}, {"t1", 4.0}, {"samples", 41}}}};
}

double column_max(const cli::Table& t, const std::string& col) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), col);
    REQUIRE(it != t.columns.end());
    const std::size_t k = std::size_t(it - t.columns.begin());
    double m = 0;
    for (const auto& r : t.rows) m = std::max(m, std::abs(std::get<double>(r[k])));
    return m;
}

}  // namespace

TEST_CASE("config round trip is idempotent") {
    json j = physical({{"mu1", 1.2},
                       {"k1", {{"type", "sinusoid"}, {"offset", 1.0}, {"amplitude", 0.2}, {"frequency", 0.5}}},
                       {"alpha02", {{"type", "polynomial"}, {"coefficients", {0.1, 0.01}}, {"domain", {-1.0, 20.0}}}}});
    j["outputs"]["phase_states"] = json::array({json::array({0, 0}), json::array({1, 1})});
    j["outputs"]["sweep"]["x"] = {{"param", "k1"}, {"min", -1.0}, {"max", 1.0}, {"count", 5}};
    j["outputs"]["sweep"]["y"] = {{"param", "alpha01"}, {"values", {0.0, 0.5}}};
    const RunConfig a = parse_config(j);
    const json once = to_json(a);
    const json twice = to_json(parse_config(once));
    CHECK(once == twice);
    CHECK(config_hash(a) == config_hash(parse_config(once)));
    CHECK(config_hash(a).size() == 16);
    CHECK(a.sweep_x->values.size() == 5);

    json other = j;
    other["physical_typo"] = 1;
    CHECK_THROWS_AS(parse_config(other), Error);
    json both = j;
    both["parameters"]["noncommutative"] = json::object();
    CHECK_THROWS_AS(parse_config(both), Error);
    const json nc = json::parse(
        R"({"parameters": {"noncommutative": {"theta": {"type": "sinusoid", "amplitude": 1, "frequency": 1}}}})");
    CHECK_THROWS_AS(parse_config(nc), Error);
}

TEST_CASE("isotropic static solve: constant frequencies, no geometric phase, separable") {
    RunConfig c = parse_config(physical({{"mu1", 1.0}, {"mu2", 1.0}, {"k1", 2.0}, {"k2", 2.0}}));
    const cli::SolveTables t = cli::solve_tables(c);
    REQUIRE(t.all_physical);
    for (const auto& r : t.separability.rows) {
        CHECK(std::get<double>(r[2]) == doctest::Approx(std::sqrt(2.0) / 2.0));
        CHECK(std::get<bool>(r[14]));
    }
    CHECK(column_max(t.phases, "theta_g") < 1e-12);
    CHECK(column_max(t.trajectory, "residual") < 1e-12);
}

TEST_CASE("sinusoidal field keeps the invariance residual small") {
    RunConfig c = parse_config(physical(
        {{"k1", 1.5},
         {"alpha01", {{"type", "sinusoid"}, {"offset", 0.3}, {"amplitude", 0.4}, {"frequency", 1.3}}},
         {"alpha02", {{"type", "sinusoid"}, {"offset", -0.2}, {"amplitude", 0.3}, {"frequency", 0.7}}}}));
    const cli::SolveTables t = cli::solve_tables(c);
    CHECK(t.all_physical);
    CHECK(column_max(t.trajectory, "residual") <= 1e-8);
}

TEST_CASE("noncommutative config matches its physical translation") {
    const json ncj = json::parse(R"({
        "parameters": {"noncommutative": {"theta": 0.3, "eta": -0.2, "m1": 1.1, "m2": 0.9, "omega1": 1.2, "omega2": 0.8}},
        "time": {"t0": 0.0, "t1": 3.0, "samples": 31},
        "invariant": {"initial": "explicit",
                      "coefficients": {"u11": 1.5, "v11": 1.0, "u22": 0.8, "v22": 1.2, "w12": 0.1}}
    })");
    const RunConfig nc = parse_config(ncj);
    RunConfig ph = nc;
    ph.params = to_physical_params(std::get<NCParams>(nc.params), std::vector<double>{0.0, 3.0});
    const auto a = cli::solve_tables(nc), b = cli::solve_tables(ph);
    REQUIRE(a.all_physical);
    for (auto tab : {&cli::SolveTables::trajectory, &cli::SolveTables::phases, &cli::SolveTables::separability}) {
        const auto& ta = a.*tab;
        const auto& tb = b.*tab;
        REQUIRE(ta.rows.size() == tb.rows.size());
        for (std::size_t i = 0; i < ta.rows.size(); ++i)
            for (std::size_t k = 0; k < ta.rows[i].size(); ++k) {
                if (const double* x = std::get_if<double>(&ta.rows[i][k]))
                    CHECK(std::abs(*x - std::get<double>(tb.rows[i][k])) <= 1e-10 * std::max(1.0, std::abs(*x)));
                else
                    CHECK(ta.rows[i][k] == tb.rows[i][k]);
            }
    }
}

TEST_CASE("sweep is deterministic and independent of the worker count") {
    json j = physical({{"k2", 1.0}});
    j["outputs"] = json::parse(R"({"sweep": {"x": {"param": "k1", "min": -1.0, "max": 1.0, "count": 9},
                                             "y": {"param": "alpha01", "min": 0.0, "max": 2.0, "count": 7}}})");
    const RunConfig c = parse_config(j);
    const std::string one = cli::to_csv(cli::sweep_table(c, 1), c, "sweep");
    const std::string many = cli::to_csv(cli::sweep_table(c, 4), c, "sweep");
    CHECK(one == many);
    CHECK(one.rfind("# lrinv ", 0) == 0);
    CHECK(one.find("\r") == std::string::npos);
    // row-major: the second data row keeps x and advances y
    const cli::Table t = cli::sweep_table(c, 3);
    REQUIRE(t.rows.size() == 63);
    CHECK(std::get<double>(t.rows[1][0]) == -1.0);
    CHECK(std::get<double>(t.rows[1][1]) == doctest::Approx(2.0 / 6.0));
    for (const auto& r : t.rows) {
        const double prod = std::get<double>(r[3]);
        if (std::abs(prod) > 1e-12) CHECK(std::get<bool>(r[2]) == (prod > 0));
    }
}

TEST_CASE("NC sweep: commutative point agrees with solve") {
    const json j = json::parse(R"({
        "parameters": {"noncommutative": {"m1": 1.0, "m2": 2.0, "omega1": 1.0, "omega2": 0.7}},
        "outputs": {"sweep": {"x": {"param": "theta", "values": [-0.5, 0.0, 0.5]},
                              "y": {"param": "eta", "values": [-0.3, 0.0]}}}
    })");
    const RunConfig c = parse_config(j);
    const cli::Table t = cli::sweep_table(c);
    const auto& row = t.rows[3];  // theta = 0, eta = 0
    REQUIRE(std::get<double>(row[0]) == 0.0);
    REQUIRE(std::get<double>(row[1]) == 0.0);
    const cli::SolveTables s = cli::solve_tables(c);
    CHECK(std::get<double>(row[7]) == doctest::Approx(std::get<double>(s.separability.rows[0][2])).epsilon(1e-12));
    CHECK(std::get<double>(row[8]) == doctest::Approx(std::get<double>(s.separability.rows[0][3])).epsilon(1e-12));
}

TEST_CASE("solve writes headed artifacts; regime violations exit with code 3") {
    const fs::path dir = scratch("solve");
    cli::Options o;
    o.command = "solve";
    o.config = write_config(dir, physical({{"k1", 1.0}, {"alpha01", 0.5}})).string();
    o.out = (dir / "ok").string();
    std::ostringstream out, err;
    REQUIRE(cli::run(o, out, err) == 0);
    for (const char* f : {"trajectory.csv", "spectral.json", "phases.csv", "separability.csv"}) {
        REQUIRE(fs::exists(dir / "ok" / f));
    }
    const std::string traj = slurp(dir / "ok" / "trajectory.csv");
    CHECK(traj.rfind("# lrinv 0.1.0\n# config_hash ", 0) == 0);
    CHECK(traj.find("t,u11,u22,v11,v22,w11,w22,u12,v12,w21,w12,residual\n") != std::string::npos);
    const json spec = json::parse(slurp(dir / "ok" / "spectral.json"));
    CHECK(spec["meta"]["version"] == cli::kVersion);

    o.config = write_config(dir, physical({{"k1", -0.5}})).string();
    o.out = (dir / "bad").string();
    CHECK(cli::run(o, out, err) == 3);
    const json e = json::parse(slurp(dir / "bad" / "error.json"));
    CHECK(e["error"]["kind"] == "regime");
    CHECK(e["error"]["code"] == 3);
    CHECK(e["error"]["message"].get<std::string>().find("stability product") != std::string::npos);

    json broken = physical({{"k1", 1.0}});
    broken["time"]["t1"] = -1.0;
    o.config = write_config(dir, broken).string();
    o.out = (dir / "cfg").string();
    CHECK(cli::run(o, out, err) == 2);
    o.config = (dir / "missing.json").string();
    CHECK(cli::run(o, out, err) == 2);
}

TEST_CASE("verify: default passes, unstable skips the phase oracle, corruption fails") {
    const fs::path dir = scratch("verify");
    json base = physical({{"mu2", 1.3}, {"k1", 1.2}, {"alpha01", 0.3}, {"alpha02", -0.2}});
    base["verify"] = {{"cutoff", 16}, {"horizon", 1.0}, {"steps", 100}, {"draws", 50}};
    RunConfig c = parse_config(base);
    c.output_dir = (dir / "a").string();
    const json r = cli::cmd_verify(c);
    CHECK(r["pass"] == true);
    for (const char* k : {"commutator_table", "ladder_algebra", "annihilation", "lr_phase", "simon_vs_ppt"})
        CHECK(r["checks"][k]["pass"] == true);
    CHECK(fs::exists(dir / "a" / "verify.json"));

    json unstable = base;
    unstable["parameters"]["physical"]["k1"] = -0.4;
    c = parse_config(unstable);
    c.output_dir = (dir / "b").string();
    const json u = cli::cmd_verify(c);
    CHECK(u["checks"]["stability"]["sigma_t2_imaginary"] == true);
    CHECK(u["checks"]["lr_phase"]["skipped"] == true);
    CHECK(u["checks"]["lr_phase"]["reason"].get<std::string>().find("unstable") != std::string::npos);

    c = parse_config(base);
    c.corrupt_coefficient = true;
    c.output_dir = (dir / "c").string();
    const json k = cli::cmd_verify(c);
    CHECK(k["pass"] == false);
    CHECK(k["checks"]["commutator_table"]["max_deviation"].get<double>() > 1e-3);
}

TEST_CASE("binary honours flags and environment overrides") {
    const fs::path dir = scratch("binary");
    const std::string cfg = write_config(dir, physical({{"k1", 1.0}, {"k2", 2.0}})).string();
    const std::string cmd = std::string("LRINV_FORMAT=json ") + LRINV_CLI_PATH + " spectrum --config " + cfg +
                            " --out " + (dir / "o").string() + " > /dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const json s = json::parse(slurp(dir / "o" / "spectrum.json"));
    CHECK(s["rows"].size() == 16);
    CHECK(s["meta"]["command"] == "spectrum");

    const std::string bad = std::string(LRINV_CLI_PATH) + " solve --format xml --out " + (dir / "e").string() +
                            " > /dev/null 2>&1";
    const int rc = std::system(bad.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
}
