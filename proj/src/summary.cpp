#include "softbell/summary.hpp"

#include <ostream>
#include <sstream>

#include "softbell/errors.hpp"
#include "softbell/text.hpp"

namespace softbell {

namespace {

using text::format_double;

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string pair_label(int ia, int ib) {
    return "A" + std::to_string(ia) + "_B" + std::to_string(ib);
}

}  // namespace

SummaryData summarize(const RunConfig& config, const AnalysisAccumulator& acc) {
    SummaryData data;
    data.counts = acc.counts();
    const auto& A = config.generator.settings_A;
    const auto& B = config.generator.settings_B;

    for (const auto& [ia, ib] : config.analyses.correlations) {
        SummaryData::Correlation c;
        c.index_A = ia;
        c.index_B = ib;
        const SettingPair pair{A.at(ia), B.at(ib)};
        try {
            c.estimate = acc.tally(pair).estimate(pair);
        } catch (const UnderSampleError& err) {
            c.estimate.settings = pair;
            c.error = err.what();
        }
        data.correlations.push_back(std::move(c));
    }

    for (const auto& q : config.analyses.chsh) {
        SummaryData::Chsh c;
        c.indices = q;
        const std::array<SettingPair, 4> pairs{SettingPair{A.at(q[0]), B.at(q[2])}, SettingPair{A.at(q[0]), B.at(q[3])},
                                               SettingPair{A.at(q[1]), B.at(q[2])}, SettingPair{A.at(q[1]), B.at(q[3])}};
        try {
            std::array<CorrelationEstimate, 4> terms;
            for (std::size_t i = 0; i < 4; ++i) terms[i] = acc.tally(pairs[i]).estimate(pairs[i]);
            c.estimate = combine_chsh(terms);
        } catch (const UnderSampleError& err) {
            c.error = err.what();
        }
        data.chsh.push_back(std::move(c));
    }

    data.has_violations = config.analyses.violations;
    if (data.has_violations) data.violations = acc.violations();
    return data;
}

void write_summary(std::ostream& out, const RunConfig& config, const SummaryData& data) {
    out << "# softbell summary v" << SOFTBELL_VERSION << "\n\n[provenance]\n";
    out << "version = " << SOFTBELL_VERSION << '\n';
    out << "seed = " << config.generator.seed << '\n';
    {
        std::istringstream lines(serialize_run_config(config));
        std::string line;
        while (std::getline(lines, line)) out << "config." << line << '\n';
    }

    const auto& n = data.counts;
    out << "\n[selection]\n"
        << "n_events = " << n.total << '\n'
        << "n_accepted = " << n.accepted << '\n'
        << "accepted_fraction = " << format_double(ratio(n.accepted, n.total)) << '\n'
        << "n_bare = " << n.bare << '\n'
        << "n_bare_accepted = " << n.bare_accepted << '\n'
        << "bare_acceptance = " << format_double(ratio(n.bare_accepted, n.bare)) << '\n'
        << "n_radiative = " << n.radiative << '\n'
        << "n_radiative_accepted = " << n.radiative_accepted << '\n'
        << "radiative_acceptance = " << format_double(ratio(n.radiative_accepted, n.radiative)) << '\n'
        << "radiated_fraction = " << format_double(ratio(n.radiative, n.total)) << '\n'
        << "radiative_fraction_accepted = " << format_double(ratio(n.radiative_accepted, n.accepted)) << '\n'
        << "n_parallel = " << n.parallel << '\n'
        << "parallel_fraction = " << format_double(ratio(n.parallel, n.total)) << '\n'
        << "parallel_fraction_accepted = " << format_double(ratio(n.parallel_accepted, n.accepted)) << '\n'
        << "ledger_open = " << n.ledger_open << '\n';

    for (const auto& c : data.correlations) {
        out << "\n[correlation." << pair_label(c.index_A, c.index_B) << "]\n"
            << "axis_A = " << format_direction(c.estimate.settings.a) << '\n'
            << "axis_B = " << format_direction(c.estimate.settings.b) << '\n';
        if (!c.error.empty()) {
            out << "error = " << c.error << '\n';
            continue;
        }
        out << "value = " << format_double(c.estimate.value) << '\n'
            << "stderr = " << format_double(c.estimate.std_error) << '\n'
            << "n_used = " << c.estimate.n_used << '\n';
    }

    for (const auto& c : data.chsh) {
        const auto& q = c.indices;
        out << "\n[chsh.A" << q[0] << "_A" << q[1] << "_B" << q[2] << "_B" << q[3] << "]\n";
        if (!c.error.empty()) {
            out << "error = " << c.error << '\n';
            continue;
        }
        out << "S = " << format_double(c.estimate.S) << '\n' << "stderr = " << format_double(c.estimate.std_error) << '\n';
        static constexpr std::array<const char*, 4> names{"E_a_b", "E_a_b2", "E_a2_b", "E_a2_b2"};
        for (std::size_t i = 0; i < 4; ++i) {
            out << names[i] << " = " << format_double(c.estimate.terms[i].value) << '\n'
                << names[i] << "_stderr = " << format_double(c.estimate.terms[i].std_error) << '\n';
        }
    }

    if (data.has_violations) {
        const auto& v = data.violations;
        out << "\n[violations]\n"
            << "n_violation = " << v.n_violation << '\n'
            << "n_selected = " << v.n_selected << '\n'
            << "n_eligible = " << v.n_eligible << '\n'
            << "fraction = " << format_double(v.fraction()) << '\n'
            << "crosscheck_failures = " << v.crosscheck_failures.size() << '\n'
            << "flagged_indices = ";
        const std::size_t shown = std::min(v.indices.size(), kMaxListedViolations);
        for (std::size_t i = 0; i < shown; ++i) out << (i ? "," : "") << v.indices[i];
        out << '\n' << "flagged_indices_truncated = " << (shown < v.indices.size() ? "true" : "false") << '\n';
    }
}

}  // namespace softbell
