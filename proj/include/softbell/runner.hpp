#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "softbell/config.hpp"
#include "softbell/summary.hpp"

namespace softbell {

inline constexpr const char* kOutDirEnv = "SOFTBELL_OUT_DIR";

struct RunOptions {
    int workers = 1;
    bool quiet = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    std::size_t chunk_size = 1 << 16;
};

/// Output directory precedence: options, config, $SOFTBELL_OUT_DIR, "softbell_out".
std::filesystem::path resolve_out_dir(const RunConfig& config, const RunOptions& options);

struct RunResult {
    std::filesystem::path events_path;
    std::filesystem::path summary_path;
    SummaryData summary;
};

/// Generates, logs and analyzes one batch. Throws GenerationError or IoError.
RunResult run(RunConfig config, const RunOptions& options);

/// Analysis of an in-memory batch without writing the event log.
SummaryData run_in_memory(const RunConfig& config, const RunOptions& options);

struct SweepRow {
    double value = 0.0;
    std::optional<SummaryData> summary;
    std::string error;
};

struct SweepResult {
    std::filesystem::path table_path;
    std::vector<SweepRow> rows;
};

/// One summary per grid point plus a combined table, rows in grid order.
/// Point failures are recorded in the row and the sweep continues.
SweepResult sweep(const RunConfig& base, const SweepSpec& spec, const RunOptions& options);

/// Re-analyzes an event log. `overrides` is layered on the log's provenance
/// config, typically to change the cut or the requested estimators.
RunResult analyze(const std::filesystem::path& events_path, const KeyValueConfig& overrides,
                  const RunOptions& options);

}  // namespace softbell
