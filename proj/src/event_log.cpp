#include "softbell/event_log.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "softbell/errors.hpp"
#include "softbell/text.hpp"

namespace softbell {

namespace {

constexpr std::size_t kFixedColumns = 22;

void put_direction(std::string& line, const Direction& d) {
    line += '\t';
    line += text::format_double(d.x());
    line += '\t';
    line += text::format_double(d.y());
    line += '\t';
    line += text::format_double(d.z());
}

class FieldCursor {
public:
    explicit FieldCursor(const std::vector<std::string>& fields) : fields_(fields) {}

    const std::string& next() {
        if (pos_ >= fields_.size()) throw IoError("event line has too few columns");
        return fields_[pos_++];
    }
    double number() {
        const auto& f = next();
        const auto v = text::parse_double(f);
        if (!v) throw IoError("bad number '" + f + "' in column " + std::to_string(pos_));
        return *v;
    }
    long long integer() {
        const auto& f = next();
        const auto v = text::parse_integer(f);
        if (!v) throw IoError("bad integer '" + f + "' in column " + std::to_string(pos_));
        return *v;
    }
    Direction direction() {
        const double x = number(), y = number(), z = number();
        try {
            return Direction::from_components(x, y, z);
        } catch (const PreconditionError& err) {
            throw IoError(std::string("column ") + std::to_string(pos_) + ": " + err.what());
        }
    }
    [[nodiscard]] bool done() const noexcept { return pos_ == fields_.size(); }

private:
    const std::vector<std::string>& fields_;
    std::size_t pos_ = 0;
};

SpinOutcome parse_outcome(long long v) {
    if (v != 1 && v != -1) throw IoError("spin outcome must be +-1, got " + std::to_string(v));
    return SpinOutcome::from_value(static_cast<int>(v));
}

}  // namespace

std::string event_log_column_header() {
    return "index\tk\tchannel"
           "\taxisA_x\taxisA_y\taxisA_z\taxisB_x\taxisB_y\taxisB_z"
           "\tsA[hbar/2]\tsB[hbar/2]"
           "\tdirA_x\tdirA_y\tdirA_z\tdirB_x\tdirB_y\tdirB_z"
           "\tE_A[E]\tjz_fermions[hbar/2]\tjz_photons[hbar]\tpt_x[E]\tpt_y[E]"
           "\tphotons[energy[E],helicity[hbar],cos_theta]*k";
}

std::string format_event_line(const Event& e) {
    std::string line;
    line.reserve(512);
    line += std::to_string(e.index);
    line += '\t';
    line += std::to_string(e.k);
    line += '\t';
    line += channel_name(e.channel);
    put_direction(line, e.axis_A);
    put_direction(line, e.axis_B);
    line += '\t';
    line += std::to_string(e.outcome_A.value());
    line += '\t';
    line += std::to_string(e.outcome_B.value());
    put_direction(line, e.dir_A);
    put_direction(line, e.dir_B);
    line += '\t';
    line += text::format_double(e.energy_A);
    line += '\t';
    line += std::to_string(e.jz_fermions);
    line += '\t';
    line += std::to_string(e.jz_photons);
    for (const double v : e.pt_residual) {
        line += '\t';
        line += text::format_double(v);
    }
    for (const auto& p : e.photons) {
        line += '\t';
        line += text::format_double(p.energy);
        line += '\t';
        line += std::to_string(p.helicity);
        line += '\t';
        line += text::format_double(p.direction.z());
    }
    return line;
}

Event parse_event_line(const std::string& line) {
    const auto fields = text::split(line, '\t');
    if (fields.size() < kFixedColumns) throw IoError("event line has " + std::to_string(fields.size()) + " columns");
    FieldCursor c(fields);
    Event e;
    const long long index = c.integer();
    if (index < 0) throw IoError("negative event index");
    e.index = static_cast<std::uint64_t>(index);
    const long long k = c.integer();
    if (k < 0) throw IoError("negative photon count");
    e.k = static_cast<int>(k);
    const auto channel = parse_channel(c.next());
    if (!channel) throw IoError("unknown channel '" + fields[2] + "'");
    e.channel = *channel;
    e.axis_A = c.direction();
    e.axis_B = c.direction();
    e.outcome_A = parse_outcome(c.integer());
    e.outcome_B = parse_outcome(c.integer());
    e.dir_A = c.direction();
    e.dir_B = c.direction();
    e.energy_A = c.number();
    e.jz_fermions = static_cast<int>(c.integer());
    e.jz_photons = static_cast<int>(c.integer());
    e.pt_residual[0] = c.number();
    e.pt_residual[1] = c.number();
    if (fields.size() != kFixedColumns + 3 * static_cast<std::size_t>(e.k)) {
        throw IoError("event " + std::to_string(e.index) + " declares k = " + std::to_string(e.k) + " but has " +
                      std::to_string(fields.size() - kFixedColumns) + " photon columns");
    }
    for (int i = 0; i < e.k; ++i) {
        PhotonRecord p;
        p.energy = c.number();
        const long long h = c.integer();
        if (h != 1 && h != -1) throw IoError("photon helicity must be +-1");
        p.helicity = static_cast<int>(h);
        const double cos_theta = c.number();
        if (!(cos_theta >= -1.0 && cos_theta <= 1.0)) throw IoError("photon cos_theta out of range");
        p.direction = Direction::normalized(std::sqrt(1.0 - cos_theta * cos_theta), 0.0, cos_theta);
        e.photons.push_back(p);
    }
    return e;
}

EventLogWriter::EventLogWriter(std::ostream& out, const std::string& provenance_config) : out_(out) {
    out_ << kEventLogMagic << " v" << SOFTBELL_VERSION << '\n';
    std::istringstream lines(provenance_config);
    std::string line;
    while (std::getline(lines, line)) out_ << kConfigPrefix << line << '\n';
    out_ << event_log_column_header() << '\n';
}

void EventLogWriter::write(const Event& e) {
    out_ << format_event_line(e) << '\n';
    ++count_;
}

void EventLogWriter::finish() {
    out_ << kCompletePrefix << count_ << '\n';
    out_.flush();
}

EventLog read_event_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read event log " + path.string());
    EventLog log;
    std::string line;
    if (!std::getline(in, line) || !line.starts_with(kEventLogMagic)) {
        throw IoError(path.string() + " is not a softbell event log");
    }
    bool header_seen = false;
    bool complete = false;
    std::uint64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (complete) throw IoError(path.string() + ": data after the completion marker");
        if (line.starts_with(kConfigPrefix)) {
            log.config_text += line.substr(std::string_view(kConfigPrefix).size()) + '\n';
        } else if (line.starts_with(kCompletePrefix)) {
            const auto n = text::parse_integer(line.substr(std::string_view(kCompletePrefix).size()));
            if (!n || static_cast<std::uint64_t>(*n) != log.events.size()) {
                throw IoError(path.string() + ": completion marker does not match the event count");
            }
            complete = true;
        } else if (!header_seen) {
            if (line != event_log_column_header()) throw IoError(path.string() + ": unexpected column header");
            header_seen = true;
        } else {
            try {
                log.events.push_back(parse_event_line(line));
            } catch (const std::exception& err) {
                throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + err.what());
            }
        }
    }
    if (!complete) throw IoError(path.string() + " is incomplete (no completion marker; the run did not finish)");
    return log;
}

}  // namespace softbell
