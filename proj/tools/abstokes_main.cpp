#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "abstokes/scenario.hpp"
#include "abstokes/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "abstokes: time-dependent Aharonov-Bohm phase shifts for an ideal "
        "solenoid, with numerical checks of the 4-dimensional Stokes "
        "identity"};
    app.set_version_flag("--version", abstokes::kVersion);

    std::string config;
    std::string out_dir = "./out";
    bool oracle = false;
    bool quiet = false;
    app.add_option("--config", config, "Scenario configuration file (JSON)")
        ->required();
    app.add_option("--out", out_dir, "Output directory for report files")
        ->capture_default_str();
    app.add_flag("--oracle", oracle,
                 "Also run midpoint-rule oracle cross-checks");
    app.add_flag("--quiet", quiet, "Suppress the console summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    abstokes::RunOptions opts;
    opts.out_dir = out_dir;
    opts.oracle = oracle;
    opts.quiet = quiet;
    return abstokes::run_scenario_file(config, opts, std::cout, std::cerr);
}
