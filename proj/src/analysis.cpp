#include "softbell/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <omp.h>
#include <stdexcept>

#include "softbell/errors.hpp"
#include "softbell/text.hpp"

namespace softbell {

namespace {

std::string describe(const SettingPair& p) {
    return "(" + format_direction(p.a) + " | " + format_direction(p.b) + ")";
}

bool on_ledger_axis(const Event& e) noexcept {
    const Direction z = Direction::unit_z();
    return e.axis_A == z && e.axis_B == z;
}

int visible_jz(const Event& e) noexcept {
    return e.outcome_A.value() + e.outcome_B.value();
}

void scan_violation(const Event& e, ViolationReport& report) {
    ++report.n_selected;
    if (!on_ledger_axis(e)) return;
    ++report.n_eligible;
    const int visible = visible_jz(e);
    if (visible == kSourceJz) return;
    ++report.n_violation;
    report.indices.push_back(e.index);
    // Truth cross-check: the unobserved photons carry exactly the deficit.
    if (e.k < 1 || e.jz_photons * 2 != -visible) report.crosscheck_failures.push_back(e.index);
}

}  // namespace

void CoincidenceCut::validate() const {
    if (!(solid_angle > 0.0 && solid_angle <= kFullSolidAngle * (1.0 + 1e-15))) {
        throw ParameterError("cut.solid_angle", "must lie in (0, 4 pi]");
    }
    if (energy_window && !(energy_window->first <= energy_window->second)) {
        throw ParameterError("cut.energy_window", "lower edge exceeds upper edge");
    }
}

double CoincidenceCut::half_angle() const noexcept {
    const double c = std::clamp(1.0 - solid_angle / (2.0 * std::numbers::pi), -1.0, 1.0);
    return std::acos(c);
}

bool CoincidenceCut::accepts(const Event& e) const noexcept {
    if (energy_window && (e.energy_A < energy_window->first || e.energy_A > energy_window->second)) return false;
    if (solid_angle >= kFullSolidAngle) return true;
    const Direction back = -e.dir_B;
    if (back == e.dir_A) return true;
    return e.dir_A.angle_to(back) <= half_angle();
}

std::vector<Event> coincidence_filter(std::span<const Event> events, const CoincidenceCut& cut) {
    cut.validate();
    std::vector<Event> out;
    std::copy_if(events.begin(), events.end(), std::back_inserter(out), [&](const Event& e) { return cut.accepts(e); });
    return out;
}

CorrelationEstimate ProductTally::estimate(const SettingPair& settings) const {
    if (n < 2) {
        throw UnderSampleError("settings " + describe(settings) + " have " + std::to_string(n) +
                               " events, need at least 2");
    }
    const double count = static_cast<double>(n);
    const double s = static_cast<double>(sum);
    // Products are +-1, so the sum of squares is n.
    const double variance = std::max(0.0, (count - s * s / count) / (count - 1.0));
    return {s / count, std::sqrt(variance / count), n, settings};
}

CorrelationEstimate estimate_correlation(std::span<const Event> events, const Direction& a, const Direction& b) {
    ProductTally tally;
    for (const auto& e : events) {
        if (e.axis_A == a && e.axis_B == b) tally.add(e.outcome_A.value() * e.outcome_B.value());
    }
    return tally.estimate({a, b});
}

ChshEstimate combine_chsh(const std::array<CorrelationEstimate, 4>& terms) {
    ChshEstimate out;
    out.terms = terms;
    out.S = std::abs(chsh_combination(terms[0].value, terms[1].value, terms[2].value, terms[3].value));
    double var = 0.0;
    for (const auto& t : terms) var += t.std_error * t.std_error;
    out.std_error = std::sqrt(var);
    return out;
}

ChshEstimate chsh_estimate(std::span<const Event> events, const Direction& a, const Direction& a2,
                           const Direction& b, const Direction& b2) {
    return combine_chsh({estimate_correlation(events, a, b), estimate_correlation(events, a, b2),
                         estimate_correlation(events, a2, b), estimate_correlation(events, a2, b2)});
}

void ViolationReport::merge(const ViolationReport& o) {
    n_violation += o.n_violation;
    n_selected += o.n_selected;
    n_eligible += o.n_eligible;
    indices.insert(indices.end(), o.indices.begin(), o.indices.end());
    crosscheck_failures.insert(crosscheck_failures.end(), o.crosscheck_failures.begin(), o.crosscheck_failures.end());
}

ViolationReport detect_violations(std::span<const Event> events) {
    ViolationReport report;
    for (const auto& e : events) scan_violation(e, report);
    return report;
}

AnalysisAccumulator::AnalysisAccumulator(const AnalysisPlan& plan) : plan_(plan) {
    plan_.cut.validate();
    const auto add_pair = [this](const SettingPair& p) {
        if (std::find(pairs_.begin(), pairs_.end(), p) == pairs_.end()) pairs_.push_back(p);
    };
    for (const auto& p : plan_.correlations) add_pair(p);
    for (const auto& q : plan_.chsh) {
        add_pair({q[0], q[2]});
        add_pair({q[0], q[3]});
        add_pair({q[1], q[2]});
        add_pair({q[1], q[3]});
    }
    tallies_.resize(pairs_.size());
}

std::size_t AnalysisAccumulator::pair_index(const SettingPair& p) const noexcept {
    return static_cast<std::size_t>(std::find(pairs_.begin(), pairs_.end(), p) - pairs_.begin());
}

const ProductTally& AnalysisAccumulator::tally(const SettingPair& p) const {
    const std::size_t i = pair_index(p);
    if (i == pairs_.size()) throw std::out_of_range("setting pair " + describe(p) + " is not part of the plan");
    return tallies_[i];
}

void AnalysisAccumulator::add(const Event& e) {
    ++counts_.total;
    if (!ledger_closes(e)) ++counts_.ledger_open;
    const bool bare = e.channel == Channel::bare;
    const bool parallel = e.channel == Channel::radiative_parallel;
    ++(bare ? counts_.bare : counts_.radiative);
    if (parallel) ++counts_.parallel;

    if (!plan_.cut.accepts(e)) return;
    ++counts_.accepted;
    ++(bare ? counts_.bare_accepted : counts_.radiative_accepted);
    if (parallel) ++counts_.parallel_accepted;

    const std::size_t i = pair_index({e.axis_A, e.axis_B});
    if (i < pairs_.size()) tallies_[i].add(e.outcome_A.value() * e.outcome_B.value());
    if (plan_.violations) scan_violation(e, violations_);
}

void AnalysisAccumulator::add(std::span<const Event> events) {
    for (const auto& e : events) add(e);
}

void AnalysisAccumulator::add_parallel(std::span<const Event> events, int workers) {
    const int threads = workers > 0 ? workers : 1;
    std::vector<AnalysisAccumulator> partials(static_cast<std::size_t>(threads), AnalysisAccumulator(plan_));
    const auto n = static_cast<std::int64_t>(events.size());

#pragma omp parallel num_threads(threads)
    {
        const int t = omp_get_thread_num();
        const int nt = omp_get_num_threads();
        // Contiguous blocks keep violation indices ordered after the merge.
        const std::int64_t begin = n * t / nt;
        const std::int64_t end = n * (t + 1) / nt;
        for (std::int64_t j = begin; j < end; ++j) partials[static_cast<std::size_t>(t)].add(events[j]);
    }
    for (const auto& p : partials) merge(p);
}

void AnalysisAccumulator::merge(const AnalysisAccumulator& o) {
    if (o.pairs_ != pairs_) throw std::invalid_argument("cannot merge accumulators built from different plans");
    counts_.total += o.counts_.total;
    counts_.accepted += o.counts_.accepted;
    counts_.bare += o.counts_.bare;
    counts_.bare_accepted += o.counts_.bare_accepted;
    counts_.radiative += o.counts_.radiative;
    counts_.radiative_accepted += o.counts_.radiative_accepted;
    counts_.parallel += o.counts_.parallel;
    counts_.parallel_accepted += o.counts_.parallel_accepted;
    counts_.ledger_open += o.counts_.ledger_open;
    for (std::size_t i = 0; i < tallies_.size(); ++i) tallies_[i].merge(o.tallies_[i]);
    violations_.merge(o.violations_);
}

}  // namespace softbell
