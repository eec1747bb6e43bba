#pragma once

#include <array>
#include <complex>
#include <utility>

#include "softbell/direction.hpp"
#include "softbell/random_stream.hpp"

namespace softbell {

using Amplitude = std::complex<double>;

/// Measured spin projection in units of hbar/2; value is -1 or +1.
class SpinOutcome {
public:
    static SpinOutcome from_value(int value);
    static constexpr SpinOutcome up() noexcept { return SpinOutcome(1); }
    static constexpr SpinOutcome down() noexcept { return SpinOutcome(-1); }

    [[nodiscard]] constexpr int value() const noexcept { return value_; }
    [[nodiscard]] constexpr SpinOutcome flipped() const noexcept { return SpinOutcome(-value_); }
    constexpr bool operator==(const SpinOutcome&) const noexcept = default;

private:
    constexpr explicit SpinOutcome(int v) noexcept : value_(v) {}
    int value_ = 1;
};

/// Two spin-1/2 state in the z product basis.
///
/// Amplitude index = 2*iA + iB with i = 0 for + and 1 for -, i.e.
///   0: (+,+)   1: (+,-)   2: (-,+)   3: (-,-)
/// Particle A occupies the first slot, B the second.
class TwoQubitSpinState {
public:
    static constexpr double kNormTolerance = 1e-12;

    explicit TwoQubitSpinState(const std::array<Amplitude, 4>& amplitudes) noexcept
        : amplitudes_(amplitudes) {}

    /// Product basis state |sA>_A |sB>_B along z.
    static TwoQubitSpinState basis(SpinOutcome a, SpinOutcome b) noexcept;

    [[nodiscard]] const std::array<Amplitude, 4>& amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] const Amplitude& operator[](std::size_t i) const noexcept { return amplitudes_[i]; }

    [[nodiscard]] double norm() const noexcept;
    [[nodiscard]] bool is_normalized() const noexcept;

private:
    std::array<Amplitude, 4> amplitudes_;
};

/// Single spin-1/2 state in the z basis: (amplitude of +, amplitude of -).
struct QubitState {
    std::array<Amplitude, 2> amplitudes;

    [[nodiscard]] double norm() const noexcept;
    /// Probability of `outcome` when measuring the spin along `axis`.
    [[nodiscard]] double probability(const Direction& axis, SpinOutcome outcome) const;
};

/// Born-rule probabilities of the four joint outcomes, cell order
/// (+,+), (+,-), (-,+), (-,-) with A first.
struct JointDistribution {
    double p_pp = 0.0;
    double p_pm = 0.0;
    double p_mp = 0.0;
    double p_mm = 0.0;

    [[nodiscard]] std::array<double, 4> cells() const noexcept { return {p_pp, p_pm, p_mp, p_mm}; }
    [[nodiscard]] double probability(SpinOutcome a, SpinOutcome b) const noexcept;
    [[nodiscard]] double sum() const noexcept { return p_pp + p_pm + p_mp + p_mm; }
    /// Expectation of sA*sB in units of hbar^2/4.
    [[nodiscard]] double correlation() const noexcept { return p_pp + p_mm - p_pm - p_mp; }
};

/// Eigenvector of sigma . axis with eigenvalue `outcome`, standard phase
/// convention: |+n> = (cos t/2, e^{i p} sin t/2), |-n> = (sin t/2, -e^{i p} cos t/2).
QubitState spin_eigenstate(const Direction& axis, SpinOutcome outcome);

/// (|+-> - |-+>)/sqrt(2).
TwoQubitSpinState make_singlet() noexcept;

/// <lhs|rhs>.
Amplitude overlap(const TwoQubitSpinState& lhs, const TwoQubitSpinState& rhs) noexcept;

/// Throws PreconditionError if the state is not normalized.
JointDistribution joint_distribution(const TwoQubitSpinState& state, const Direction& a, const Direction& b);

/// Samples one joint outcome. Consumes exactly one uniform draw, mapped
/// through the cumulative distribution in cell order.
std::pair<SpinOutcome, SpinOutcome> measure_pair(const TwoQubitSpinState& state, const Direction& a,
                                                 const Direction& b, RandomStream& rng);

/// Conditional state of B after A is found with `outcome` along `a`.
/// Throws ConditioningError for zero-probability outcomes.
QubitState collapse_after_A(const TwoQubitSpinState& state, const Direction& a, SpinOutcome outcome);

/// Singlet correlation <S_a(A) S_b(B)> in units of hbar^2/4, i.e. -a.b.
double correlation_analytic(const Direction& a, const Direction& b) noexcept;

/// |E(a,b) - E(a,b2) + E(a2,b) + E(a2,b2)| from correlation_analytic.
double chsh_analytic(const Direction& a, const Direction& a2, const Direction& b, const Direction& b2) noexcept;

/// Combines four correlations in the CHSH pattern, without the absolute value.
constexpr double chsh_combination(double e_ab, double e_ab2, double e_a2b, double e_a2b2) noexcept {
    return e_ab - e_ab2 + e_a2b + e_a2b2;
}

}  // namespace softbell
