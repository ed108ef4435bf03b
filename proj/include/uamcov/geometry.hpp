#pragma once

#include <vector>

#include "uamcov/rng.hpp"
#include "uamcov/types.hpp"

namespace uamcov {

/// An infinite straight air corridor in the horizontal plane. theta is the
/// direction of travel, so the line is the set of points (x, y) with
/// -x sin(theta) + y cos(theta) = offset; theta = 0, offset = 0 is the
/// x-axis. Each corridor carries two one-way traffic levels.
struct Corridor {
    double theta = 0.0;   // [0, pi)
    double offset = 0.0;  // signed perpendicular distance from the origin, meters
    double level_low_alt = 300.0;
    double level_high_alt = 500.0;

    double altitude(Level l) const { return l == Level::LC ? level_low_alt : level_high_alt; }

    /// Horizontal distance from (p.x, p.y) to the corridor line.
    double distance_to(const Point3& p) const;
};

struct Deployment {
    BsKind kind = BsKind::UAV;
    std::vector<Point3> positions;
    double altitude = 600.0;

    bool empty() const { return positions.empty(); }
    std::size_t size() const { return positions.size(); }
};

/// Altitudes of the two corridor levels.
struct CorridorLevels {
    double low = 300.0;
    double high = 500.0;

    double altitude(Level l) const { return l == Level::LC ? low : high; }
};

/// Poisson line process in (theta, offset) form. The expected number of
/// lines hitting the region is 2 * radius * line_density.
std::vector<Corridor> sample_corridors(double line_density, const Region& region, Rng& rng,
                                       CorridorLevels levels = {});

/// Homogeneous 2-D PPP of base stations on the region disk, all at one height.
Deployment sample_bs(BsKind kind, double density, double altitude, const Region& region, Rng& rng);

/// Drops every base station closer than exclusion_radius (horizontally) to
/// any corridor. Only meaningful for tethered platforms; for other kinds a
/// warning is logged and the deployment is returned unchanged.
Deployment apply_tether_exclusion(const Deployment& deployment, const std::vector<Corridor>& corridors,
                                  double exclusion_radius);

/// 1-D PPP of aircraft on the chord of every corridor inside the region,
/// independently on each of the two levels.
std::vector<Point3> sample_evtols(const std::vector<Corridor>& corridors, double linear_density,
                                  const Region& region, Rng& rng);

struct TypicalPlacement {
    Corridor corridor;
    Point3 user;
};

/// Palm conditioning: a corridor through the origin with uniform
/// orientation, and the typical user at the origin on the requested level.
TypicalPlacement place_typical_user(Level level, Rng& rng, CorridorLevels levels = {});

/// Chord of a corridor inside the region disk; length 0 if it misses.
struct Chord {
    Point3 start;  // z unused
    double dir_x = 0.0;
    double dir_y = 0.0;
    double length = 0.0;
};

Chord corridor_chord(const Corridor& c, const Region& region);

}  // namespace uamcov
