#include <iostream>

#include <CLI11.hpp>

#include "lrinv/cli.hpp"

int main(int argc, char** argv) {
    using namespace lrinv;
    CLI::App app{"Lewis-Riesenfeld invariants for the 2D oscillator in a magnetic field"};
    app.set_version_flag("--version", cli::kVersion);
    app.require_subcommand(1);

    cli::Options o;
    std::string config, out, format;
    int cutoff = 0;
    double tol = 0;
    std::uint64_t seed = 0;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "JSON run configuration")->envname("LRINV_CONFIG");
        sub->add_option("--out", out, "output directory")->envname("LRINV_OUT");
        sub->add_option("--format", format, "csv or json")->envname("LRINV_FORMAT");
        sub->add_option("--cutoff", cutoff, "Fock cutoff per mode")->envname("LRINV_CUTOFF");
        sub->add_option("--tol", tol, "verification tolerance")->envname("LRINV_TOL");
        sub->add_option("--seed", seed, "seed for randomized draws")->envname("LRINV_SEED");
    };
    const std::pair<const char*, const char*> commands[] = {
        {"solve", "integrate the invariant and write trajectory, spectra, phases, separability"},
        {"verify", "run the Fock-space oracle suite"},
        {"sweep", "scan a 2-D parameter grid"},
        {"spectrum", "invariant spectrum at t0"}};
    for (const auto& [name, help] : commands) common(app.add_subcommand(name, help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << cli::error_json(ErrorKind::Config, e.what()).dump() << "\n";
        return cli::exit_code(ErrorKind::Config);
    }

    CLI::App* sub = app.get_subcommands().front();
    o.command = sub->get_name();
    if (sub->count("--config")) o.config = config;
    if (sub->count("--out")) o.out = out;
    if (sub->count("--format")) o.format = format;
    if (sub->count("--cutoff")) o.cutoff = cutoff;
    if (sub->count("--tol")) o.tol = tol;
    if (sub->count("--seed")) o.seed = seed;
    return cli::run(o, std::cout, std::cerr);
}
