#include "softbell/generator.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <omp.h>

#include "softbell/errors.hpp"

namespace softbell {

namespace {

// Group-rejection attempts per photon draw inside one event; exhaustion
// counts as one infeasible draw.
constexpr long kPhotonAttempts = 10'000;

int helicity_sum(const std::vector<PhotonRecord>& photons) noexcept {
    int sum = 0;
    for (const auto& p : photons) sum += p.helicity;
    return sum;
}

}  // namespace

void GeneratorConfig::validate() const {
    emission.validate();
    if (settings_A.empty()) throw ParameterError("generator.settings_A", "needs at least one direction");
    if (settings_B.empty()) throw ParameterError("generator.settings_B", "needs at least one direction");
    if (!std::isfinite(smear_sigma) || smear_sigma < 0.0) throw ParameterError("generator.smear_sigma", "must be >= 0");
    if (n_events < 1) throw ParameterError("generator.n_events", "must be >= 1");
    if (max_retries < 0) throw ParameterError("generator.max_retries", "must be >= 0");
}

Event generate_event(const GeneratorConfig& config, const Direction& a, const Direction& b, RandomStream& rng,
                     std::uint64_t index) {
    const EmissionParams& params = config.emission;
    const double lambda = available_energy(params);

    Event e;
    e.index = index;
    e.axis_A = a;
    e.axis_B = b;
    e.energy_A = params.E_A;

    try {
        const PhotonCountDistribution counts = photon_count_distribution(params);
        for (int retry = 0;; ++retry) {
            e.k = counts.quantile(rng.uniform());
            if (e.k == 0) break;
            try {
                e.photons = sample_photons(e.k, params, rng, kPhotonAttempts);
                break;
            } catch (const InfeasibleSampleError& err) {
                if (retry >= config.max_retries) {
                    throw GenerationError(index, std::string("photon sampling kept failing: ") + err.what());
                }
            }
        }
    } catch (const ParameterError& err) {
        throw GenerationError(index, err.what());
    }

    e.dir_A = sample_isotropic(rng);
    const TwoQubitSpinState singlet = make_singlet();

    if (e.k == 0) {
        e.channel = Channel::bare;
        std::tie(e.outcome_A, e.outcome_B) = measure_pair(singlet, a, b, rng);
        e.dir_B = -e.dir_A;
        return e;
    }

    const bool parallel = rng.uniform() < parallel_spin_probability(params, e.k);
    e.channel = parallel ? Channel::radiative_parallel : Channel::radiative_antiparallel;
    std::tie(e.outcome_A, e.outcome_B) = measure_pair(singlet, a, b, rng);
    if (parallel) {
        // B's spin is reversed relative to the singlet: E(a, b) = +a.b and
        // equal axes give equal outcomes with a uniform common sign.
        e.outcome_B = e.outcome_B.flipped();
        const Direction ledger_axis = Direction::unit_z();
        int sign = 0;
        if (a == ledger_axis) {
            sign = e.outcome_A.value();
        } else if (b == ledger_axis) {
            sign = e.outcome_B.value();
        } else {
            sign = rng.uniform() < 0.5 ? 1 : -1;
        }
        e.jz_fermions = 2 * sign;
    }

    // Photon J_z must cancel the fermion pair's; helicities are redrawn until
    // at most one unit of orbital J_z is needed to close the ledger.
    const int target = -e.jz_fermions / 2;
    for (int retry = 0; std::abs(target - helicity_sum(e.photons)) > 1; ++retry) {
        if (retry >= config.max_retries) {
            throw GenerationError(index, "could not condition photon helicities on the J_z ledger");
        }
        for (auto& p : e.photons) p.helicity = rng.uniform() < 0.5 ? 1 : -1;
    }
    e.jz_photons = target;

    double radiated = 0.0;
    for (const auto& p : e.photons) {
        radiated += p.energy;
        e.pt_residual[0] += p.energy * p.direction.x();
        e.pt_residual[1] += p.energy * p.direction.y();
    }

    const double width = config.smear_sigma * radiated / lambda;
    if (width > 0.0) {
        const double angle = std::abs(width * rng.normal());
        const double turn = 2.0 * std::numbers::pi * rng.uniform();
        e.dir_B = (-e.dir_A).tilted(angle, turn);
    } else {
        e.dir_B = -e.dir_A;
    }
    return e;
}

Event generate_indexed_event(const GeneratorConfig& config, std::uint64_t index) {
    RandomStream rng(config.seed, index);
    const Direction& a = config.settings_A[rng.pick(config.settings_A.size())];
    const Direction& b = config.settings_B[rng.pick(config.settings_B.size())];
    return generate_event(config, a, b, rng, index);
}

std::vector<Event> generate_batch_serial(const GeneratorConfig& config) {
    config.validate();
    std::vector<Event> events;
    events.reserve(config.n_events);
    for (std::uint64_t i = 0; i < config.n_events; ++i) events.push_back(generate_indexed_event(config, i));
    return events;
}

void generate_range(const GeneratorConfig& config, std::uint64_t first, std::span<Event> out, int workers) {
    const auto n = static_cast<std::int64_t>(out.size());
    std::exception_ptr error;
    std::int64_t error_at = n;

#pragma omp parallel for num_threads(workers > 0 ? workers : 1) schedule(static)
    for (std::int64_t j = 0; j < n; ++j) {
        try {
            out[j] = generate_indexed_event(config, first + static_cast<std::uint64_t>(j));
        } catch (...) {
#pragma omp critical(softbell_generate_error)
            if (j < error_at) {
                error_at = j;
                error = std::current_exception();
            }
        }
    }
    // Report the lowest failing index so the error does not depend on scheduling.
    if (error) std::rethrow_exception(error);
}

std::vector<Event> generate_batch(const GeneratorConfig& config, int workers) {
    config.validate();
    std::vector<Event> events(config.n_events);
    generate_range(config, 0, events, workers);
    return events;
}

void generate_batch_chunked(const GeneratorConfig& config, int workers, std::size_t chunk_size,
                            const std::function<void(std::span<const Event>)>& sink) {
    config.validate();
    if (chunk_size == 0) chunk_size = 1;
    std::vector<Event> buffer(std::min<std::uint64_t>(chunk_size, config.n_events));
    for (std::uint64_t first = 0; first < config.n_events; first += buffer.size()) {
        const auto count = static_cast<std::size_t>(std::min<std::uint64_t>(buffer.size(), config.n_events - first));
        std::span<Event> chunk(buffer.data(), count);
        generate_range(config, first, chunk, workers);
        sink(chunk);
    }
}

}  // namespace softbell
