#pragma once

#include <cstddef>
#include <cstdint>

namespace softbell {

/// Per-event random stream.
///
/// Event i of a batch draws from the stream keyed by (seed, i), so the
/// result of a batch does not depend on how events are split over workers.
/// The generator is SplitMix64 started at
///   state = mix(mix(seed) ^ stream_index)
/// where mix is the SplitMix64 finalizer; each draw adds the golden-ratio
/// increment to the state and returns mix(state). mix is a bijection, so
/// distinct indices give distinct starting points. Uniform and normal
/// variates are derived here rather than with <random> distributions, whose
/// algorithms are implementation-defined.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_index = 0) noexcept
        : state_(mix(mix(seed) ^ stream_index)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept { return raw(); }

    std::uint64_t raw() noexcept {
        state_ += kIncrement;
        return mix(state_);
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept {
        return (static_cast<double>(raw() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Index in [0, n) from a single uniform draw.
    std::size_t pick(std::size_t n) noexcept;

    /// Standard normal variate, Box-Muller, two uniform draws per call.
    double normal() noexcept;

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kIncrement = 0x9E3779B97F4A7C15ULL;

    std::uint64_t state_;
};

}  // namespace softbell
