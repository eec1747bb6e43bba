#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "softbell/event.hpp"

namespace softbell {

// Event log layout, tab separated, one event per line:
//
//   index k channel axisA_x axisA_y axisA_z axisB_x axisB_y axisB_z sA sB
//   dirA_x dirA_y dirA_z dirB_x dirB_y dirB_z E_A jz_fermions jz_photons
//   pt_x pt_y, then k triplets: energy helicity cos_theta
//
// Lines starting with '#' are provenance (the full run config, prefixed
// "# config: "). The column header row follows the provenance, and a final
// "# complete events=N" line marks a finished log.

inline constexpr const char* kEventLogMagic = "# softbell event log";
inline constexpr const char* kConfigPrefix = "# config: ";
inline constexpr const char* kCompletePrefix = "# complete events=";

std::string event_log_column_header();
std::string format_event_line(const Event& e);
/// Photon azimuths are not stored; parsed photons lie in the xz half-plane.
Event parse_event_line(const std::string& line);

class EventLogWriter {
public:
    EventLogWriter(std::ostream& out, const std::string& provenance_config);
    void write(const Event& e);
    /// Appends the completion marker.
    void finish();
    [[nodiscard]] std::uint64_t count() const noexcept { return count_; }

private:
    std::ostream& out_;
    std::uint64_t count_ = 0;
};

struct EventLog {
    std::string config_text;  // provenance config, reassembled
    std::vector<Event> events;
};

/// Throws IoError for unreadable, malformed or incomplete logs.
EventLog read_event_log(const std::filesystem::path& path);

}  // namespace softbell
