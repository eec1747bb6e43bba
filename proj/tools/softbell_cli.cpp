// softbell: run, sweep and re-analyze soft-photon EPR-Bohm simulations.
//
//   softbell run     --config run.cfg [--seed N] [--out DIR] [--workers N] [--quiet]
//   softbell sweep   --config run.cfg [--spec sweep.cfg] [...]
//   softbell analyze --events events.tsv [--config overrides.cfg] [...]
//
// Exit codes: 0 success, 2 config error, 3 generation error, 4 I/O error.
// Failures also print one JSON error record on stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "softbell/errors.hpp"
#include "softbell/runner.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kGenerationError = 3, kIoError = 4 };

int report(ExitCode code, const char* kind, const std::string& message, const std::string& field = {}, int line = 0) {
    nlohmann::json record{{"status", "error"}, {"code", static_cast<int>(code)}, {"kind", kind}, {"message", message}};
    if (!field.empty()) record["field"] = field;
    if (line > 0) record["line"] = line;
    std::cerr << record.dump() << std::endl;
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo EPR-Bohm simulator with soft-photon radiation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string spec_path;
    std::string events_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int workers = 1;
    bool quiet = false;

    const auto common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "override generator.seed");
        cmd->add_option("--out", out_dir, "output directory (default: config output.dir, $SOFTBELL_OUT_DIR)");
        cmd->add_option("--workers", workers, "OpenMP worker threads")->check(CLI::PositiveNumber);
        cmd->add_flag("--quiet", quiet, "suppress log output");
    };

    auto* run_cmd = app.add_subcommand("run", "generate, log and analyze one batch");
    run_cmd->add_option("--config", config_path, "run configuration")->required();
    common(run_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "scan one parameter over a grid");
    sweep_cmd->add_option("--config", config_path, "base run configuration")->required();
    sweep_cmd->add_option("--spec", spec_path, "sweep spec (sweep.* keys); defaults to the config file");
    common(sweep_cmd);

    auto* analyze_cmd = app.add_subcommand("analyze", "re-analyze an event log, e.g. with a new cut");
    analyze_cmd->add_option("--events", events_path, "event log written by run")->required();
    analyze_cmd->add_option("--config", config_path, "keys overriding the log's provenance config");
    common(analyze_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? kOk : report(kConfigError, "usage", err.what());
    }

    softbell::RunOptions options;
    options.workers = workers;
    options.quiet = quiet;
    if (app.got_subcommand(run_cmd) || app.got_subcommand(sweep_cmd) || app.got_subcommand(analyze_cmd)) {
        auto* cmd = app.get_subcommands().front();
        if (cmd->count("--seed")) options.seed = seed;
        if (cmd->count("--out")) options.out_dir = out_dir;
    }

    try {
        if (app.got_subcommand(run_cmd)) {
            const auto result = softbell::run(softbell::load_run_config(config_path), options);
            if (!quiet) std::cout << result.summary_path.string() << '\n';
        } else if (app.got_subcommand(sweep_cmd)) {
            const auto base_kv = softbell::KeyValueConfig::load(config_path);
            const auto spec_kv = spec_path.empty() ? base_kv : softbell::KeyValueConfig::load(spec_path);
            const auto result = softbell::sweep(softbell::run_config_from(base_kv), softbell::sweep_spec_from(spec_kv), options);
            if (!quiet) std::cout << result.table_path.string() << '\n';
        } else {
            softbell::KeyValueConfig overrides;
            if (!config_path.empty()) overrides = softbell::KeyValueConfig::load(config_path);
            const auto result = softbell::analyze(events_path, overrides, options);
            if (!quiet) std::cout << result.summary_path.string() << '\n';
        }
    } catch (const softbell::ConfigError& err) {
        return report(kConfigError, "config", err.what(), err.field(), err.line());
    } catch (const softbell::ParameterError& err) {
        return report(kConfigError, "config", err.what(), err.field());
    } catch (const softbell::GenerationError& err) {
        return report(kGenerationError, "generation", err.what());
    } catch (const softbell::IoError& err) {
        return report(kIoError, "io", err.what());
    } catch (const std::exception& err) {
        return report(kGenerationError, "generation", err.what());
    }
    return kOk;
}
