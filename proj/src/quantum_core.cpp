#include "softbell/quantum_core.hpp"

#include <cmath>
#include <numbers>

#include "softbell/errors.hpp"
#include "softbell/text.hpp"

namespace softbell {

namespace {

// Born probabilities this small are rounding residue of exact zeros.
constexpr double kProbabilityFloor = 1e-15;
constexpr double kConditioningFloor = 1e-14;

constexpr std::size_t slot(SpinOutcome s) noexcept { return s.value() > 0 ? 0 : 1; }

void require_normalized(const TwoQubitSpinState& state) {
    if (!state.is_normalized()) {
        throw PreconditionError("two-qubit state is not normalized (norm = " + text::format_double(state.norm()) + ")");
    }
}

}  // namespace

SpinOutcome SpinOutcome::from_value(int value) {
    if (value != 1 && value != -1) throw PreconditionError("spin outcome must be +1 or -1, got " + std::to_string(value));
    return SpinOutcome(value);
}

TwoQubitSpinState TwoQubitSpinState::basis(SpinOutcome a, SpinOutcome b) noexcept {
    std::array<Amplitude, 4> amps{};
    amps[2 * slot(a) + slot(b)] = 1.0;
    return TwoQubitSpinState(amps);
}

double TwoQubitSpinState::norm() const noexcept {
    double n2 = 0.0;
    for (const auto& c : amplitudes_) n2 += std::norm(c);
    return std::sqrt(n2);
}

bool TwoQubitSpinState::is_normalized() const noexcept {
    double n2 = 0.0;
    for (const auto& c : amplitudes_) n2 += std::norm(c);
    return std::abs(n2 - 1.0) <= kNormTolerance;
}

double QubitState::norm() const noexcept {
    return std::sqrt(std::norm(amplitudes[0]) + std::norm(amplitudes[1]));
}

double QubitState::probability(const Direction& axis, SpinOutcome outcome) const {
    const QubitState e = spin_eigenstate(axis, outcome);
    return std::norm(std::conj(e.amplitudes[0]) * amplitudes[0] + std::conj(e.amplitudes[1]) * amplitudes[1]);
}

double JointDistribution::probability(SpinOutcome a, SpinOutcome b) const noexcept {
    return cells()[2 * slot(a) + slot(b)];
}

QubitState spin_eigenstate(const Direction& axis, SpinOutcome outcome) {
    const double half = 0.5 * axis.polar_angle();
    const Amplitude phase = std::polar(1.0, axis.azimuth());
    const double c = std::cos(half), s = std::sin(half);
    if (outcome.value() > 0) return QubitState{{Amplitude(c), phase * s}};
    return QubitState{{Amplitude(s), -phase * c}};
}

TwoQubitSpinState make_singlet() noexcept {
    const double h = std::numbers::sqrt2 / 2.0;
    return TwoQubitSpinState({Amplitude(0.0), Amplitude(h), Amplitude(-h), Amplitude(0.0)});
}

Amplitude overlap(const TwoQubitSpinState& lhs, const TwoQubitSpinState& rhs) noexcept {
    Amplitude acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) acc += std::conj(lhs[i]) * rhs[i];
    return acc;
}

JointDistribution joint_distribution(const TwoQubitSpinState& state, const Direction& a, const Direction& b) {
    require_normalized(state);
    const std::array<SpinOutcome, 2> outcomes{SpinOutcome::up(), SpinOutcome::down()};
    std::array<double, 4> p{};
    double total = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const QubitState ea = spin_eigenstate(a, outcomes[i]);
        for (std::size_t j = 0; j < 2; ++j) {
            const QubitState eb = spin_eigenstate(b, outcomes[j]);
            Amplitude amp = 0.0;
            for (std::size_t ia = 0; ia < 2; ++ia) {
                for (std::size_t ib = 0; ib < 2; ++ib) {
                    amp += std::conj(ea.amplitudes[ia] * eb.amplitudes[ib]) * state[2 * ia + ib];
                }
            }
            double v = std::norm(amp);
            if (v < kProbabilityFloor) v = 0.0;
            p[2 * i + j] = v;
            total += v;
        }
    }
    for (auto& v : p) v /= total;
    return {p[0], p[1], p[2], p[3]};
}

std::pair<SpinOutcome, SpinOutcome> measure_pair(const TwoQubitSpinState& state, const Direction& a,
                                                 const Direction& b, RandomStream& rng) {
    const auto p = joint_distribution(state, a, b).cells();
    const double u = rng.uniform();
    // The fallback is the last populated cell so rounding in the running sum
    // can never select a zero-probability outcome.
    std::size_t cell = 3;
    while (p[cell] == 0.0) --cell;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (p[i] == 0.0) continue;
        cumulative += p[i];
        if (u < cumulative) {
            cell = i;
            break;
        }
    }
    const auto sign = [](std::size_t bit) { return bit == 0 ? SpinOutcome::up() : SpinOutcome::down(); };
    return {sign(cell / 2), sign(cell % 2)};
}

QubitState collapse_after_A(const TwoQubitSpinState& state, const Direction& a, SpinOutcome outcome) {
    require_normalized(state);
    const QubitState ea = spin_eigenstate(a, outcome);
    QubitState b{};
    for (std::size_t ib = 0; ib < 2; ++ib) {
        b.amplitudes[ib] = std::conj(ea.amplitudes[0]) * state[ib] + std::conj(ea.amplitudes[1]) * state[2 + ib];
    }
    const double n = b.norm();
    if (n * n < kConditioningFloor) {
        throw ConditioningError("outcome " + std::to_string(outcome.value()) + " for A has zero probability");
    }
    b.amplitudes[0] /= n;
    b.amplitudes[1] /= n;
    return b;
}

double correlation_analytic(const Direction& a, const Direction& b) noexcept {
    return -a.dot(b);
}

double chsh_analytic(const Direction& a, const Direction& a2, const Direction& b, const Direction& b2) noexcept {
    return std::abs(chsh_combination(correlation_analytic(a, b), correlation_analytic(a, b2),
                                     correlation_analytic(a2, b), correlation_analytic(a2, b2)));
}

}  // namespace softbell
