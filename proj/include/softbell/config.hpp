#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "softbell/analysis.hpp"
#include "softbell/generator.hpp"

namespace softbell {

/// Flat "section.key = value" text; '#' starts a comment. Later entries and
/// overlays replace earlier ones.
class KeyValueConfig {
public:
    struct Entry {
        std::string value;
        int line = 0;  // 0 for entries that did not come from a file line
    };

    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig load(const std::filesystem::path& path);

    void set(const std::string& key, std::string value, int line = 0);
    void overlay(const KeyValueConfig& other);

    [[nodiscard]] bool contains(const std::string& key) const { return entries_.contains(key); }
    [[nodiscard]] const Entry* find(const std::string& key) const;
    [[nodiscard]] const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, Entry> entries_;
};

/// Estimators requested by index into the generator settings lists.
struct AnalysisRequest {
    std::vector<std::pair<int, int>> correlations;  // (A index, B index)
    std::vector<std::array<int, 4>> chsh;           // A a, A a2, B b, B b2
    bool violations = true;

    bool operator==(const AnalysisRequest&) const = default;
};

struct OutputPaths {
    std::string dir;  // empty: fall back to $SOFTBELL_OUT_DIR, then "softbell_out"
    std::string events = "events.tsv";
    std::string summary = "summary.txt";

    bool operator==(const OutputPaths&) const = default;
};

struct RunConfig {
    GeneratorConfig generator;
    CoincidenceCut cut;
    AnalysisRequest analyses;
    OutputPaths output;
    std::string log_level = "info";

    /// Throws ConfigError naming the field.
    void validate() const;
    [[nodiscard]] AnalysisPlan analysis_plan() const;

    bool operator==(const RunConfig&) const = default;
};

/// Builds and validates a RunConfig. Unknown keys are rejected.
RunConfig run_config_from(const KeyValueConfig& kv);
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical text form; parse_run_config(serialize_run_config(c)) == c.
std::string serialize_run_config(const RunConfig& config);

struct SweepSpec {
    std::string parameter;  // alpha, kappa_par, kappa_rad, E_min, solid_angle, smear_sigma
    std::vector<double> values;
    std::uint64_t n_events = 0;  // 0: keep generator.n_events

    void validate() const;
};

/// Reads sweep.parameter, sweep.values, sweep.n_events.
SweepSpec sweep_spec_from(const KeyValueConfig& kv);

/// Copy of `base` with the swept parameter set to `value`.
RunConfig apply_sweep_point(const RunConfig& base, const SweepSpec& spec, double value);

}  // namespace softbell
