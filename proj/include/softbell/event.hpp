#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "softbell/direction.hpp"
#include "softbell/emission.hpp"
#include "softbell/quantum_core.hpp"

namespace softbell {

enum class Channel { bare, radiative_antiparallel, radiative_parallel };

std::string_view channel_name(Channel c) noexcept;
std::optional<Channel> parse_channel(std::string_view name) noexcept;

/// One production + measurement.
///
/// Visible fields: outcomes, axes, directions, energy_A.
/// Truth fields: k, channel, photons and the J_z ledger. The ledger is kept
/// along the lab z axis:
///   jz_fermions  fermion pair J_z in hbar/2 units
///   jz_photons   J_z carried by the photon system in hbar units: the sum of
///                helicities plus at most one unit of orbital angular momentum
///                when the helicity parity cannot match the fermion deficit
/// Closure: jz_fermions / 2 + jz_photons + jz_source == 0 with jz_source = 0.
struct Event {
    std::uint64_t index = 0;
    SpinOutcome outcome_A = SpinOutcome::up();
    SpinOutcome outcome_B = SpinOutcome::down();
    Direction axis_A;
    Direction axis_B;
    Direction dir_A;
    Direction dir_B = -Direction();
    double energy_A = 0.0;
    int k = 0;
    Channel channel = Channel::bare;
    std::vector<PhotonRecord> photons;
    int jz_fermions = 0;
    int jz_photons = 0;
    std::array<double, 2> pt_residual{0.0, 0.0};

    bool operator==(const Event&) const = default;

    [[nodiscard]] int helicity_sum() const noexcept;
    [[nodiscard]] double radiated_energy() const noexcept;
    /// Photon orbital J_z implied by the ledger (jz_photons - helicity_sum).
    [[nodiscard]] int photon_orbital_jz() const noexcept { return jz_photons - helicity_sum(); }
};

inline constexpr int kSourceJz = 0;

/// Exact integer check of jz_fermions / 2 + jz_photons + source == 0.
bool ledger_closes(const Event& e) noexcept;

}  // namespace softbell
