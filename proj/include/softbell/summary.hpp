#pragma once

#include <iosfwd>
#include <string>

#include "softbell/analysis.hpp"
#include "softbell/config.hpp"

namespace softbell {

/// Flattened view of a finished analysis, the source for summaries and
/// sweep rows. Failed estimators carry their error text instead of values.
struct SummaryData {
    AnalysisAccumulator::Counts counts;

    struct Correlation {
        int index_A = 0;
        int index_B = 0;
        CorrelationEstimate estimate;
        std::string error;
    };
    std::vector<Correlation> correlations;

    struct Chsh {
        std::array<int, 4> indices{};
        ChshEstimate estimate;
        std::string error;
    };
    std::vector<Chsh> chsh;

    bool has_violations = false;
    ViolationReport violations;
};

SummaryData summarize(const RunConfig& config, const AnalysisAccumulator& acc);

/// Nested key-value summary ("[section]" headers, "key = value" lines),
/// preceded by the provenance block.
void write_summary(std::ostream& out, const RunConfig& config, const SummaryData& data);

inline constexpr std::size_t kMaxListedViolations = 64;

}  // namespace softbell
