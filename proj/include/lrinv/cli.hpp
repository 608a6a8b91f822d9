#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lrinv/config.hpp"
#include "lrinv/errors.hpp"

namespace lrinv::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
int exit_code(ErrorKind k);  // config/domain 2, regime/positivity/degenerate 3, numerical/conditioning 4

struct Options {
    std::string command;
    std::optional<std::string> config, out, format;
    std::optional<int> cutoff;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
};

// Loads the config (defaults when absent) and applies flag overrides.
RunConfig resolve(const Options& o);

using Cell = std::variant<double, long long, bool, std::string>;
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Provenance header lines, each prefixed by "# ".
std::string header_block(const RunConfig& c, const std::string& command);
std::string to_csv(const Table& t, const RunConfig& c, const std::string& command);
nlohmann::json to_json(const Table& t, const RunConfig& c, const std::string& command);
std::string format_number(double v);  // 17 significant digits

struct SolveTables {
    Table trajectory, phases, separability;
    nlohmann::json spectral;
    bool all_physical = false;
    std::string failure;
};
SolveTables solve_tables(const RunConfig& c);
Table sweep_table(const RunConfig& c, unsigned threads = 0);
Table spectrum_table(const RunConfig& c);
nlohmann::json verify_report(const RunConfig& c);

// Each command writes its artifacts below c.output_dir and returns the file list.
std::vector<std::string> cmd_solve(const RunConfig& c);
std::vector<std::string> cmd_sweep(const RunConfig& c);
std::vector<std::string> cmd_spectrum(const RunConfig& c);
nlohmann::json cmd_verify(const RunConfig& c);

nlohmann::json error_json(ErrorKind k, const std::string& message);

// Dispatch; errors are reported on `err` and in <out>/error.json.
int run(const Options& o, std::ostream& out, std::ostream& err);

}  // namespace lrinv::cli
