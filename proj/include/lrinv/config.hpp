#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lrinv/invariant.hpp"

namespace lrinv {

struct SweepAxis {
    std::string param;
    std::vector<double> values;
};

struct RunConfig {
    std::variant<PhysicalParams, NCParams> params = PhysicalParams{};
    double t0 = 0.0, t1 = 10.0;
    std::size_t samples = 201;
    std::optional<InvariantCoefficients> initial;  // empty: Hamiltonian at t0
    IntegratorOptions integrator;
    int spectrum_nmax = 3;
    std::vector<std::pair<int, int>> phase_states{{0, 0}};
    std::optional<SweepAxis> sweep_x, sweep_y;
    std::string output_dir = "out";
    std::string format = "csv";
    // verification
    int cutoff = 24;
    std::uint64_t seed = 1;
    int draws = 20;
    double tol = 1e-8;
    double verify_horizon = 2.0;
    int verify_steps = 400;
    bool corrupt_coefficient = false;
};

nlohmann::json schedule_to_json(const ParamSchedule& s);
ParamSchedule schedule_from_json(const nlohmann::json& j, const std::string& name);

RunConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);
RunConfig load_config(const std::string& path);

// FNV-1a over the canonical serialization.
std::string config_hash(const RunConfig& c);

HamiltonianModel make_model(const RunConfig& c);

// Replace one named parameter by a constant (sweep axes).
void set_parameter(RunConfig& c, const std::string& name, double value);

}  // namespace lrinv
