#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "softbell/emission.hpp"
#include "softbell/event.hpp"

namespace softbell {

struct GeneratorConfig {
    EmissionParams emission;
    std::vector<Direction> settings_A{Direction::unit_z()};
    std::vector<Direction> settings_B{Direction::unit_z()};
    double smear_sigma = 1.0;  // radians per unit radiated energy fraction
    std::uint64_t seed = 1;
    std::uint64_t n_events = 1000;
    int max_retries = 100;

    void validate() const;

    bool operator==(const GeneratorConfig&) const = default;
};

/// One event for fixed settings.
///
/// Draw order: photon count (one uniform) and, for k >= 1, the photons
/// (see sample_photons), both redrawn on infeasibility at most max_retries
/// times; dir_A (two); channel choice (one, only when k >= 1); spin
/// outcomes (one); ledger sign (one, only for the parallel channel with
/// neither axis on z); helicity redraws (k per redraw, only while the photon
/// helicities cannot absorb the fermion J_z); smearing of dir_B (three, only
/// when the smearing width is > 0).
/// Throws GenerationError carrying `index`.
Event generate_event(const GeneratorConfig& config, const Direction& a, const Direction& b,
                     RandomStream& rng, std::uint64_t index = 0);

/// Event `index` of the batch: stream (seed, index), then one draw picking
/// the A setting, one picking the B setting, then generate_event.
Event generate_indexed_event(const GeneratorConfig& config, std::uint64_t index);

/// Serial reference implementation.
std::vector<Event> generate_batch_serial(const GeneratorConfig& config);

/// Events [first, first + out.size()) into `out`, split across `workers`
/// OpenMP threads. Output is identical to the serial path for any worker count.
void generate_range(const GeneratorConfig& config, std::uint64_t first, std::span<Event> out, int workers);

std::vector<Event> generate_batch(const GeneratorConfig& config, int workers);

/// Generates the batch in chunks and hands each chunk to `sink` in index
/// order, so only one chunk is resident at a time.
void generate_batch_chunked(const GeneratorConfig& config, int workers, std::size_t chunk_size,
                            const std::function<void(std::span<const Event>)>& sink);

}  // namespace softbell
