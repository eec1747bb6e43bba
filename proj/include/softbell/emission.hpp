#pragma once

#include <vector>

#include "softbell/direction.hpp"
#include "softbell/random_stream.hpp"

namespace softbell {

/// Knobs of the soft-photon emission model. Energies share one arbitrary
/// unit with c = 1; m_B is a rest energy.
struct EmissionParams {
    double alpha = 1.0 / 137.0;
    double E_total = 1.0;
    double E_A = 0.5;
    double m_B = 0.2;
    double E_min = 1e-3;  // infrared cutoff, stands in for detector resolution
    double kappa_rad = 1.0;
    double kappa_par = 1.0;
    int k_max = 8;

    /// Throws ParameterError naming the offending field.
    void validate() const;

    bool operator==(const EmissionParams&) const = default;
};

struct PhotonRecord {
    double energy = 0.0;
    Direction direction;
    int helicity = 1;  // hbar units, -1 or +1

    bool operator==(const PhotonRecord&) const = default;
};

/// Truncated photon-count law, probabilities[k] for k = 0..k_max.
struct PhotonCountDistribution {
    std::vector<double> probabilities;

    [[nodiscard]] int k_max() const noexcept { return static_cast<int>(probabilities.size()) - 1; }
    [[nodiscard]] double p0() const noexcept { return probabilities.front(); }
    /// Smallest k whose cumulative probability exceeds u.
    [[nodiscard]] int quantile(double u) const noexcept;
};

/// Lambda = E_total - E_A - m_B. May be zero or negative.
double available_energy(const EmissionParams& params) noexcept;

/// Mean of the untruncated count law: kappa_rad * alpha * log(Lambda / E_min),
/// or 0 when Lambda <= E_min.
double mean_photon_count(const EmissionParams& params);

/// p_k proportional to m^k / k! for k <= k_max, m = mean_photon_count.
/// Lambda <= E_min yields p_0 = 1. Throws ParameterError if E_min <= 0.
PhotonCountDistribution photon_count_distribution(const EmissionParams& params);

/// Inverse CDF of the 1/E spectrum on [E_min, Lambda].
double soft_energy_quantile(const EmissionParams& params, double u) noexcept;

/// Samples k photons. Draw order per attempt: k energies; once the group
/// fits the budget, per photon: cos(theta), azimuth, helicity.
/// Throws InfeasibleSampleError when k * E_min > Lambda, or when the group
/// rejection exceeds `max_attempts`.
std::vector<PhotonRecord> sample_photons(int k, const EmissionParams& params, RandomStream& rng,
                                         long max_attempts = 1'000'000);

/// Probability of the parallel-spin channel given k radiated photons:
/// 0 for k = 0, else min(1, kappa_par * (Lambda / E_total)^2).
double parallel_spin_probability(const EmissionParams& params, int k) noexcept;

/// Isotropic direction from two uniform draws (cos theta, then azimuth).
Direction sample_isotropic(RandomStream& rng);

}  // namespace softbell
