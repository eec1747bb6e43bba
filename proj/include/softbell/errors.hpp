#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace softbell {

// Caller broke a documented precondition (non-normalized state, non-unit axis).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Conditioning on an outcome that has zero probability.
class ConditioningError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid model or generator parameter; field() is the dotted config key.
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// The requested photon configuration cannot fit inside the energy budget.
class InfeasibleSampleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error {
public:
    GenerationError(std::uint64_t event_index, const std::string& what)
        : std::runtime_error("event " + std::to_string(event_index) + ": " + what),
          event_index_(event_index) {}

    [[nodiscard]] std::uint64_t event_index() const noexcept { return event_index_; }

private:
    std::uint64_t event_index_;
};

// Too few events carry the requested measurement settings.
class UnderSampleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, int line, const std::string& what)
        : std::runtime_error(format(field, line, what)), field_(std::move(field)), line_(line) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }
    // 0 when the offending value did not come from a file line.
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& field, int line, const std::string& what) {
        std::string out = field.empty() ? std::string("config") : field;
        if (line > 0) out += " (line " + std::to_string(line) + ")";
        return out + ": " + what;
    }

    std::string field_;
    int line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace softbell
