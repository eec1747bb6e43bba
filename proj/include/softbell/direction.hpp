#pragma once

#include <array>
#include <string>

namespace softbell {

/// Unit 3-vector used for measurement axes and momentum directions.
///
/// Equality is exact component equality; measurement settings are matched
/// against the configured lists this way, never with a tolerance.
class Direction {
public:
    static constexpr double kUnitTolerance = 1e-12;

    /// +z, the quantization and ledger axis.
    constexpr Direction() noexcept = default;

    /// Components must already be unit length within kUnitTolerance.
    static Direction from_components(double x, double y, double z);
    /// Accepts any nonzero vector. Vectors already unit within tolerance are
    /// kept bit-for-bit so serialized settings round-trip exactly.
    static Direction normalized(double x, double y, double z);
    /// Polar angle from +z and azimuth from +x, both in radians.
    static Direction from_angles(double polar, double azimuth);

    static constexpr Direction unit_x() noexcept { return Direction(1.0, 0.0, 0.0); }
    static constexpr Direction unit_y() noexcept { return Direction(0.0, 1.0, 0.0); }
    static constexpr Direction unit_z() noexcept { return Direction(0.0, 0.0, 1.0); }

    [[nodiscard]] constexpr double x() const noexcept { return x_; }
    [[nodiscard]] constexpr double y() const noexcept { return y_; }
    [[nodiscard]] constexpr double z() const noexcept { return z_; }

    [[nodiscard]] double polar_angle() const noexcept;
    [[nodiscard]] double azimuth() const noexcept;

    [[nodiscard]] constexpr double dot(const Direction& o) const noexcept {
        return x_ * o.x_ + y_ * o.y_ + z_ * o.z_;
    }
    [[nodiscard]] constexpr Direction operator-() const noexcept { return Direction(-x_, -y_, -z_); }

    /// Angle to another direction, accurate near 0 and pi.
    [[nodiscard]] double angle_to(const Direction& o) const noexcept;

    /// Rotates this direction away from itself by `angle` towards the
    /// azimuth `turn` measured in a fixed frame perpendicular to it.
    [[nodiscard]] Direction tilted(double angle, double turn) const;

    constexpr bool operator==(const Direction&) const noexcept = default;

private:
    constexpr Direction(double x, double y, double z) noexcept : x_(x), y_(y), z_(z) {}

    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 1.0;
};

/// Parses "z", "-x", "polar(theta_deg, phi_deg)" or "x, y, z".
Direction parse_direction(const std::string& text);
/// Shortest round-trip form "x,y,z".
std::string format_direction(const Direction& d);

}  // namespace softbell
