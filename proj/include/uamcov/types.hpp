#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace uamcov {

// Errors ---------------------------------------------------------------------

class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for links that cannot be evaluated (coincident endpoints,
/// non-positive distance).
class InvalidLink : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// No base station available to serve the typical user.
class NoServer : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Geometry primitives --------------------------------------------------------

/// Position in meters; z is altitude above ground.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3&, const Point3&) = default;
};

inline double horizontal_distance(const Point3& a, const Point3& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double distance3d(const Point3& a, const Point3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Simulation window: a disk of the given radius centred at the origin.
struct Region {
    double radius = 5000.0;

    explicit Region(double r = 5000.0) : radius(r) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw InvalidParameter("region radius must be positive and finite");
        }
    }
};

enum class BsKind { CT, UAV, NTFP };

/// Corridor traffic level: low corridor or high corridor.
enum class Level { LC, HC };

enum class Direction { DL, UL };

std::string_view to_string(BsKind k);
std::string_view to_string(Level l);
std::string_view to_string(Direction d);

/// Case-insensitive parsers; throw InvalidParameter on unknown names.
BsKind parse_bs_kind(std::string_view s);
Level parse_level(std::string_view s);
Direction parse_direction(std::string_view s);

inline bool is_aerial(BsKind k) { return k != BsKind::CT; }

/// Default mounting height of each base-station kind.
inline double default_bs_altitude(BsKind k) { return k == BsKind::CT ? 40.0 : 600.0; }

/// Emit a warning line on stderr. Thread-safe.
void log_warning(std::string_view message);

}  // namespace uamcov
