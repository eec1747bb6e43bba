#include "softbell/event.hpp"

namespace softbell {

std::string_view channel_name(Channel c) noexcept {
    switch (c) {
        case Channel::bare: return "bare";
        case Channel::radiative_antiparallel: return "radiative-antiparallel";
        case Channel::radiative_parallel: return "radiative-parallel";
    }
    return "bare";
}

std::optional<Channel> parse_channel(std::string_view name) noexcept {
    if (name == "bare") return Channel::bare;
    if (name == "radiative-antiparallel") return Channel::radiative_antiparallel;
    if (name == "radiative-parallel") return Channel::radiative_parallel;
    return std::nullopt;
}

int Event::helicity_sum() const noexcept {
    int sum = 0;
    for (const auto& p : photons) sum += p.helicity;
    return sum;
}

double Event::radiated_energy() const noexcept {
    double sum = 0.0;
    for (const auto& p : photons) sum += p.energy;
    return sum;
}

bool ledger_closes(const Event& e) noexcept {
    // jz_fermions is in hbar/2 units; an odd value could never close.
    if (e.jz_fermions % 2 != 0) return false;
    return e.jz_fermions / 2 + e.jz_photons + kSourceJz == 0;
}

}  // namespace softbell
