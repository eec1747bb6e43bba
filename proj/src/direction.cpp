#include "softbell/direction.hpp"

#include <cmath>
#include <numbers>

#include "softbell/errors.hpp"
#include "softbell/text.hpp"

namespace softbell {

Direction Direction::from_components(double x, double y, double z) {
    const double n2 = x * x + y * y + z * z;
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kUnitTolerance) {
        throw PreconditionError("direction is not unit length (|v|^2 = " + text::format_double(n2) + ")");
    }
    return Direction(x, y, z);
}

Direction Direction::normalized(double x, double y, double z) {
    const double n2 = x * x + y * y + z * z;
    if (!std::isfinite(n2) || n2 == 0.0) throw PreconditionError("cannot normalize a zero or non-finite vector");
    if (std::abs(n2 - 1.0) <= kUnitTolerance) return Direction(x, y, z);
    const double n = std::sqrt(n2);
    return Direction(x / n, y / n, z / n);
}

Direction Direction::from_angles(double polar, double azimuth) {
    const double s = std::sin(polar);
    return Direction(s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar));
}

double Direction::polar_angle() const noexcept {
    return std::atan2(std::hypot(x_, y_), z_);
}

double Direction::azimuth() const noexcept {
    return (x_ == 0.0 && y_ == 0.0) ? 0.0 : std::atan2(y_, x_);
}

double Direction::angle_to(const Direction& o) const noexcept {
    const double cx = y_ * o.z_ - z_ * o.y_;
    const double cy = z_ * o.x_ - x_ * o.z_;
    const double cz = x_ * o.y_ - y_ * o.x_;
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot(o));
}

Direction Direction::tilted(double angle, double turn) const {
    if (angle == 0.0) return *this;
    // Frame (u, v) perpendicular to this direction, built from the axis
    // least aligned with it.
    double ux, uy, uz;
    if (std::abs(z_) < 0.9) {
        ux = -y_;
        uy = x_;
        uz = 0.0;
    } else {
        ux = 0.0;
        uy = -z_;
        uz = y_;
    }
    const double un = std::sqrt(ux * ux + uy * uy + uz * uz);
    ux /= un;
    uy /= un;
    uz /= un;
    const double vx = y_ * uz - z_ * uy;
    const double vy = z_ * ux - x_ * uz;
    const double vz = x_ * uy - y_ * ux;

    const double c = std::cos(angle), s = std::sin(angle);
    const double ct = std::cos(turn), st = std::sin(turn);
    return normalized(c * x_ + s * (ct * ux + st * vx), c * y_ + s * (ct * uy + st * vy),
                      c * z_ + s * (ct * uz + st * vz));
}

Direction parse_direction(const std::string& raw) {
    const std::string_view s = text::trim(raw);
    if (s == "x" || s == "+x") return Direction::unit_x();
    if (s == "y" || s == "+y") return Direction::unit_y();
    if (s == "z" || s == "+z") return Direction::unit_z();
    if (s == "-x") return -Direction::unit_x();
    if (s == "-y") return -Direction::unit_y();
    if (s == "-z") return -Direction::unit_z();

    constexpr std::string_view polar = "polar(";
    if (s.starts_with(polar) && s.ends_with(")")) {
        const auto parts = text::split(s.substr(polar.size(), s.size() - polar.size() - 1), ',');
        if (parts.size() != 2) throw PreconditionError("polar(theta_deg, phi_deg) takes two angles");
        const auto theta = text::parse_double(parts[0]);
        const auto phi = text::parse_double(parts[1]);
        if (!theta || !phi) throw PreconditionError("bad angle in '" + std::string(s) + "'");
        constexpr double deg = std::numbers::pi / 180.0;
        return Direction::from_angles(*theta * deg, *phi * deg);
    }

    const auto parts = text::split(s, ',');
    if (parts.size() != 3) throw PreconditionError("cannot parse direction '" + std::string(s) + "'");
    std::array<double, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto c = text::parse_double(parts[i]);
        if (!c) throw PreconditionError("bad component in '" + std::string(s) + "'");
        v[i] = *c;
    }
    return Direction::normalized(v[0], v[1], v[2]);
}

std::string format_direction(const Direction& d) {
    return text::format_double(d.x()) + "," + text::format_double(d.y()) + "," + text::format_double(d.z());
}

}  // namespace softbell
