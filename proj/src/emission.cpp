#include "softbell/emission.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "softbell/errors.hpp"
#include "softbell/text.hpp"

namespace softbell {

void EmissionParams::validate() const {
    const auto fail = [](const char* field, const std::string& why) {
        throw ParameterError(std::string("emission.") + field, why);
    };
    // alpha = 0 is admitted as the bare limit.
    if (!(alpha >= 0.0 && alpha < 1.0)) fail("alpha", "must lie in [0, 1)");
    if (!std::isfinite(E_total) || E_total <= 0.0) fail("E_total", "must be positive");
    if (!std::isfinite(E_A) || E_A < 0.0) fail("E_A", "must be non-negative");
    if (!std::isfinite(m_B) || m_B < 0.0) fail("m_B", "must be non-negative");
    if (!std::isfinite(E_min) || E_min <= 0.0) fail("E_min", "must be positive");
    if (!std::isfinite(kappa_rad) || kappa_rad < 0.0) fail("kappa_rad", "must be non-negative");
    if (!std::isfinite(kappa_par) || kappa_par < 0.0) fail("kappa_par", "must be non-negative");
    if (k_max < 1) fail("k_max", "must be at least 1");
}

int PhotonCountDistribution::quantile(double u) const noexcept {
    double cumulative = 0.0;
    int last = 0;
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        if (probabilities[k] == 0.0) continue;
        last = static_cast<int>(k);
        cumulative += probabilities[k];
        if (u < cumulative) return last;
    }
    return last;
}

double available_energy(const EmissionParams& params) noexcept {
    return params.E_total - params.E_A - params.m_B;
}

double mean_photon_count(const EmissionParams& params) {
    if (!(params.E_min > 0.0)) throw ParameterError("emission.E_min", "must be positive");
    const double lambda = available_energy(params);
    if (lambda <= params.E_min) return 0.0;
    return params.kappa_rad * params.alpha * std::log(lambda / params.E_min);
}

PhotonCountDistribution photon_count_distribution(const EmissionParams& params) {
    params.validate();
    const double mean = mean_photon_count(params);
    PhotonCountDistribution dist;
    dist.probabilities.assign(static_cast<std::size_t>(params.k_max) + 1, 0.0);
    if (mean == 0.0) {
        dist.probabilities[0] = 1.0;
        return dist;
    }
    // Poisson weights relative to p_0, accumulated as ratios to avoid
    // overflow in mean^k and k!.
    double weight = 1.0;
    double total = 0.0;
    for (int k = 0; k <= params.k_max; ++k) {
        if (k > 0) weight *= mean / k;
        dist.probabilities[k] = weight;
        total += weight;
    }
    for (auto& p : dist.probabilities) p /= total;
    return dist;
}

double soft_energy_quantile(const EmissionParams& params, double u) noexcept {
    const double lambda = available_energy(params);
    return params.E_min * std::exp(u * std::log(lambda / params.E_min));
}

Direction sample_isotropic(RandomStream& rng) {
    const double cos_theta = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    return Direction::normalized(s * std::cos(phi), s * std::sin(phi), cos_theta);
}

std::vector<PhotonRecord> sample_photons(int k, const EmissionParams& params, RandomStream& rng, long max_attempts) {
    if (k < 1) throw PreconditionError("sample_photons needs k >= 1");
    if (!(params.E_min > 0.0)) throw ParameterError("emission.E_min", "must be positive");
    const double lambda = available_energy(params);
    if (!(lambda > params.E_min) || k * params.E_min > lambda) {
        throw InfeasibleSampleError(std::to_string(k) + " photons above E_min = " + text::format_double(params.E_min) +
                                    " cannot fit in Lambda = " + text::format_double(lambda));
    }

    std::vector<PhotonRecord> photons(static_cast<std::size_t>(k));
    for (long attempt = 0;; ++attempt) {
        if (attempt == max_attempts) {
            throw InfeasibleSampleError("energy budget rejection exceeded " + std::to_string(max_attempts) +
                                        " attempts for k = " + std::to_string(k));
        }
        double sum = 0.0;
        for (auto& p : photons) {
            p.energy = std::clamp(soft_energy_quantile(params, rng.uniform()), params.E_min, lambda);
            sum += p.energy;
        }
        if (sum <= lambda) break;
    }
    for (auto& p : photons) {
        p.direction = sample_isotropic(rng);
        p.helicity = rng.uniform() < 0.5 ? 1 : -1;
    }
    return photons;
}

double parallel_spin_probability(const EmissionParams& params, int k) noexcept {
    if (k <= 0) return 0.0;
    const double lambda = available_energy(params);
    if (lambda <= 0.0) return 0.0;
    const double ratio = lambda / params.E_total;
    return std::min(1.0, params.kappa_par * ratio * ratio);
}

}  // namespace softbell
