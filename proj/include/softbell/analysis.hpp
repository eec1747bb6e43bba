#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "softbell/event.hpp"

namespace softbell {

/// Back-to-back acceptance of a detector pair.
struct CoincidenceCut {
    static constexpr double kFullSolidAngle = 12.566370614359172;  // 4 pi

    double solid_angle = kFullSolidAngle;  // steradians
    std::optional<std::pair<double, double>> energy_window;  // [lo, hi] on E_A

    void validate() const;
    /// Half-angle theta of the cone with 2 pi (1 - cos theta) = solid_angle.
    [[nodiscard]] double half_angle() const noexcept;
    [[nodiscard]] bool accepts(const Event& e) const noexcept;

    bool operator==(const CoincidenceCut&) const = default;
};

std::vector<Event> coincidence_filter(std::span<const Event> events, const CoincidenceCut& cut);

struct SettingPair {
    Direction a;
    Direction b;
    bool operator==(const SettingPair&) const = default;
};

struct CorrelationEstimate {
    double value = 0.0;  // hbar^2/4 units
    double std_error = 0.0;
    std::uint64_t n_used = 0;
    SettingPair settings;
};

/// Count and sum of sA*sB. Products are +-1, so the sum of squares equals
/// the count and integer tallies merge exactly in any order.
struct ProductTally {
    std::uint64_t n = 0;
    std::int64_t sum = 0;

    void add(int product) noexcept {
        ++n;
        sum += product;
    }
    void merge(const ProductTally& o) noexcept {
        n += o.n;
        sum += o.sum;
    }
    /// Throws UnderSampleError below two entries.
    [[nodiscard]] CorrelationEstimate estimate(const SettingPair& settings) const;
};

/// Mean of sA*sB over events measured exactly at (a, b).
CorrelationEstimate estimate_correlation(std::span<const Event> events, const Direction& a, const Direction& b);

struct ChshEstimate {
    double S = 0.0;
    double std_error = 0.0;
    std::array<CorrelationEstimate, 4> terms;  // (a,b), (a,b2), (a2,b), (a2,b2)
};

ChshEstimate combine_chsh(const std::array<CorrelationEstimate, 4>& terms);

/// |E(a,b) - E(a,b2) + E(a2,b) + E(a2,b2)| with errors added in quadrature.
/// The UnderSampleError names the missing setting pair.
ChshEstimate chsh_estimate(std::span<const Event> events, const Direction& a, const Direction& a2,
                           const Direction& b, const Direction& b2);

struct ViolationReport {
    std::uint64_t n_violation = 0;
    std::uint64_t n_selected = 0;  // events examined
    std::uint64_t n_eligible = 0;  // events with both axes on the ledger axis
    std::vector<std::uint64_t> indices;
    /// Flagged events whose truth record does not account for the deficit
    /// (k == 0, or jz_photons != -(sA + sB) / 2). Always empty for
    /// generator output.
    std::vector<std::uint64_t> crosscheck_failures;

    void merge(const ViolationReport& o);
    [[nodiscard]] double fraction() const noexcept {
        return n_eligible == 0 ? 0.0 : static_cast<double>(n_violation) / static_cast<double>(n_eligible);
    }
};

/// Flags events measured on the ledger axis whose visible spins do not sum
/// to zero.
ViolationReport detect_violations(std::span<const Event> events);

/// Estimators requested for one run.
struct AnalysisPlan {
    CoincidenceCut cut;
    std::vector<SettingPair> correlations;
    std::vector<std::array<Direction, 4>> chsh;  // a, a2, b, b2
    bool violations = true;
};

/// Selection and estimator tallies. Every field merges associatively so
/// partial results from workers combine to the serial result exactly.
class AnalysisAccumulator {
public:
    explicit AnalysisAccumulator(const AnalysisPlan& plan);

    void add(const Event& e);
    void add(std::span<const Event> events);
    /// OpenMP kernel: per-thread partials merged in thread order.
    void add_parallel(std::span<const Event> events, int workers);
    void merge(const AnalysisAccumulator& o);

    struct Counts {
        std::uint64_t total = 0;
        std::uint64_t accepted = 0;
        std::uint64_t bare = 0;
        std::uint64_t bare_accepted = 0;
        std::uint64_t radiative = 0;
        std::uint64_t radiative_accepted = 0;
        std::uint64_t parallel = 0;
        std::uint64_t parallel_accepted = 0;
        std::uint64_t ledger_open = 0;  // events failing J_z closure
        bool operator==(const Counts&) const = default;
    };

    [[nodiscard]] const AnalysisPlan& plan() const noexcept { return plan_; }
    [[nodiscard]] const Counts& counts() const noexcept { return counts_; }
    [[nodiscard]] const std::vector<SettingPair>& pairs() const noexcept { return pairs_; }
    [[nodiscard]] const std::vector<ProductTally>& tallies() const noexcept { return tallies_; }
    [[nodiscard]] const ViolationReport& violations() const noexcept { return violations_; }

    /// Tally for a pair the plan references; throws std::out_of_range otherwise.
    [[nodiscard]] const ProductTally& tally(const SettingPair& p) const;

private:
    std::size_t pair_index(const SettingPair& p) const noexcept;

    AnalysisPlan plan_;
    std::vector<SettingPair> pairs_;  // distinct pairs referenced by the plan
    std::vector<ProductTally> tallies_;
    Counts counts_;
    ViolationReport violations_;
};

}  // namespace softbell
