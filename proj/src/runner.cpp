#include "softbell/runner.hpp"

#include <cstdlib>
#include <fstream>
#include <spdlog/spdlog.h>

#include "softbell/errors.hpp"
#include "softbell/event_log.hpp"
#include "softbell/text.hpp"

namespace softbell {

namespace {

void configure_logging(const RunConfig& config, const RunOptions& options) {
    spdlog::set_level(options.quiet ? spdlog::level::off : spdlog::level::from_str(config.log_level));
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_summary_file(const std::filesystem::path& path, const RunConfig& config, const SummaryData& data) {
    auto out = open_output(path);
    write_summary(out, config, data);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

std::string cell(double v) { return text::format_double(v); }

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::filesystem::path resolve_out_dir(const RunConfig& config, const RunOptions& options) {
    if (options.out_dir) return *options.out_dir;
    if (!config.output.dir.empty()) return config.output.dir;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return "softbell_out";
}

RunResult run(RunConfig config, const RunOptions& options) {
    if (options.seed) config.generator.seed = *options.seed;
    config.validate();
    configure_logging(config, options);

    const auto dir = resolve_out_dir(config, options);
    ensure_directory(dir);
    RunResult result;
    result.events_path = dir / config.output.events;
    result.summary_path = dir / config.output.summary;

    spdlog::info("generating {} events (seed {}, {} workers) into {}", config.generator.n_events,
                 config.generator.seed, options.workers, result.events_path.string());

    auto events_out = open_output(result.events_path);
    // The config text is the provenance: it alone reproduces the log.
    EventLogWriter writer(events_out, serialize_run_config(config));
    AnalysisAccumulator acc(config.analysis_plan());
    generate_batch_chunked(config.generator, options.workers, options.chunk_size, [&](std::span<const Event> chunk) {
        for (const auto& e : chunk) writer.write(e);
        if (!events_out) throw IoError("failed writing " + result.events_path.string());
        acc.add_parallel(chunk, options.workers);
    });
    writer.finish();
    if (!events_out) throw IoError("failed writing " + result.events_path.string());

    result.summary = summarize(config, acc);
    write_summary_file(result.summary_path, config, result.summary);
    spdlog::info("accepted {} of {} events; summary in {}", acc.counts().accepted, acc.counts().total,
                 result.summary_path.string());
    return result;
}

SummaryData run_in_memory(const RunConfig& config, const RunOptions& options) {
    config.validate();
    AnalysisAccumulator acc(config.analysis_plan());
    generate_batch_chunked(config.generator, options.workers, options.chunk_size,
                           [&](std::span<const Event> chunk) { acc.add_parallel(chunk, options.workers); });
    return summarize(config, acc);
}

SweepResult sweep(const RunConfig& input, const SweepSpec& spec, const RunOptions& options) {
    spec.validate();
    RunConfig base = input;
    if (options.seed) base.generator.seed = *options.seed;
    configure_logging(base, options);

    const auto dir = resolve_out_dir(base, options);
    ensure_directory(dir);

    SweepResult result;
    result.table_path = dir / "sweep.tsv";
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        SweepRow row;
        row.value = spec.values[i];
        try {
            const RunConfig point = apply_sweep_point(base, spec, row.value);
            row.summary = run_in_memory(point, options);
            write_summary_file(dir / ("summary_point_" + std::to_string(i) + ".txt"), point, *row.summary);
            spdlog::info("sweep point {} ({} = {}) done", i, spec.parameter, row.value);
        } catch (const std::exception& err) {
            row.summary.reset();
            row.error = err.what();
            spdlog::warn("sweep point {} ({} = {}) failed: {}", i, spec.parameter, row.value, row.error);
        }
        result.rows.push_back(std::move(row));
    }

    auto out = open_output(result.table_path);
    out << "point\tparameter\tvalue\tstatus";
    for (const auto& [ia, ib] : base.analyses.correlations) {
        const std::string label = "E_A" + std::to_string(ia) + "_B" + std::to_string(ib);
        out << '\t' << label << '\t' << label << "_stderr";
    }
    for (std::size_t q = 0; q < base.analyses.chsh.size(); ++q) out << "\tS" << q << "\tS" << q << "_stderr";
    out << "\tviolation_fraction\taccepted_fraction\tradiated_fraction\tparallel_fraction"
           "\tbare_acceptance\tradiative_acceptance\n";

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& row = result.rows[i];
        out << i << '\t' << spec.parameter << '\t' << cell(row.value) << '\t';
        if (!row.summary) {
            // Tabs and newlines would break the table layout.
            std::string status = "error: " + row.error;
            for (auto& ch : status) {
                if (ch == '\t' || ch == '\n') ch = ' ';
            }
            out << status << '\n';
            continue;
        }
        const auto& s = *row.summary;
        out << "ok";
        for (const auto& c : s.correlations) {
            if (c.error.empty()) out << '\t' << cell(c.estimate.value) << '\t' << cell(c.estimate.std_error);
            else out << "\tNA\tNA";
        }
        for (const auto& c : s.chsh) {
            if (c.error.empty()) out << '\t' << cell(c.estimate.S) << '\t' << cell(c.estimate.std_error);
            else out << "\tNA\tNA";
        }
        const auto& n = s.counts;
        out << '\t' << (s.has_violations ? cell(s.violations.fraction()) : std::string("NA")) << '\t'
            << cell(ratio(n.accepted, n.total)) << '\t' << cell(ratio(n.radiative, n.total)) << '\t'
            << cell(ratio(n.parallel, n.total)) << '\t' << cell(ratio(n.bare_accepted, n.bare)) << '\t'
            << cell(ratio(n.radiative_accepted, n.radiative)) << '\n';
    }
    out.flush();
    if (!out) throw IoError("failed writing " + result.table_path.string());
    return result;
}

RunResult analyze(const std::filesystem::path& events_path, const KeyValueConfig& overrides, const RunOptions& options) {
    EventLog log = read_event_log(events_path);
    KeyValueConfig kv = KeyValueConfig::parse(log.config_text);
    kv.overlay(overrides);
    const RunConfig config = run_config_from(kv);
    configure_logging(config, options);

    AnalysisAccumulator acc(config.analysis_plan());
    acc.add_parallel(log.events, options.workers);

    const auto dir = resolve_out_dir(config, options);
    ensure_directory(dir);
    RunResult result;
    result.events_path = events_path;
    result.summary_path = dir / config.output.summary;
    result.summary = summarize(config, acc);
    write_summary_file(result.summary_path, config, result.summary);
    spdlog::info("re-analyzed {} events from {}; summary in {}", log.events.size(), events_path.string(),
                 result.summary_path.string());
    return result;
}

}  // namespace softbell
