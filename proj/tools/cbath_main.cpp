// cbath — command line front end.
//
//   cbath run --config <path> [--out <path>]   single scenario -> CSV
//   cbath sweep --config <path>                per-value CSVs + summary CSV
//   cbath selfcheck                            invariant suite
//
// Exit codes: 0 ok, 2 config error, 3 numerical failure.
// CBATH_THREADS (integer >= 1) sets the worker count; default 1.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cbath/config.hpp"
#include "cbath/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int thread_count_from_env() {
    const char* raw = std::getenv("CBATH_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1 || v > 1024)
        throw cbath::ConfigError(std::string("CBATH_THREADS: invalid value '") + raw + "'");
    return static_cast<int>(v);
}

int run_command(const std::string& config_path, const std::string& out_override) {
    cbath::ScenarioConfig cfg = cbath::load_config(config_path);
    if (!out_override.empty()) cfg.output_path = out_override;
    if (!cfg.sweep_axis.empty())
        throw cbath::ConfigError("config sets sweep_axis; use the sweep command");
    const auto rows = cbath::run_scenario(cfg, thread_count_from_env());
    cbath::write_scenario_csv(rows, cfg.output_path);
    std::cout << "wrote " << rows.size() << " rows to " << cfg.output_path << "\n";
    return kExitOk;
}

int sweep_command(const std::string& config_path) {
    const cbath::ScenarioConfig cfg = cbath::load_config(config_path);
    if (cfg.sweep_axis.empty())
        throw cbath::ConfigError("config sets no sweep_axis; use the run command");
    const auto summary = cbath::run_sweep(cfg, thread_count_from_env());
    cbath::write_sweep_summary_csv(cfg.sweep_axis, summary, cfg.output_path);
    std::cout << "wrote " << summary.size() << " sweep points; summary at " << cfg.output_path
              << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact reduced dynamics of two Brownian particles in a common bath"};
    app.require_subcommand(1);

    std::string run_config, run_out;
    CLI::App* run = app.add_subcommand("run", "evaluate one scenario and write its CSV");
    run->add_option("--config", run_config, "config file (key = value)")->required();
    run->add_option("--out", run_out, "override output_path from the config");

    std::string sweep_config;
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep and its summary");
    sweep->add_option("--config", sweep_config, "config file with sweep_axis set")->required();

    CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the built-in invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return run_command(run_config, run_out);
        if (sweep->parsed()) return sweep_command(sweep_config);
        if (selfcheck->parsed()) return cbath::self_check(std::cout) ? kExitOk : kExitNumerical;
    } catch (const cbath::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const cbath::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
