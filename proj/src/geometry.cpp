#include "uamcov/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace uamcov {

namespace {

void require_density(double density, const char* what) {
    if (!(density >= 0.0) || !std::isfinite(density)) {
        throw InvalidParameter(std::string(what) + " must be non-negative and finite");
    }
}

std::uint64_t poisson_count(double mean, Rng& rng) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

}  // namespace

double Corridor::distance_to(const Point3& p) const {
    return std::abs(-p.x * std::sin(theta) + p.y * std::cos(theta) - offset);
}

std::vector<Corridor> sample_corridors(double line_density, const Region& region, Rng& rng,
                                       CorridorLevels levels) {
    require_density(line_density, "corridor line density");
    const auto n = poisson_count(2.0 * region.radius * line_density, rng);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> offset(-region.radius, region.radius);
    std::vector<Corridor> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        Corridor c;
        c.theta = angle(rng);
        c.offset = offset(rng);
        c.level_low_alt = levels.low;
        c.level_high_alt = levels.high;
        out.push_back(c);
    }
    return out;
}

Deployment sample_bs(BsKind kind, double density, double altitude, const Region& region, Rng& rng) {
    require_density(density, "base-station density");
    if (!(altitude >= 0.0)) throw InvalidParameter("base-station altitude must be non-negative");

    const double r2 = region.radius * region.radius;
    const auto n = poisson_count(density * std::numbers::pi * r2, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    Deployment d;
    d.kind = kind;
    d.altitude = altitude;
    d.positions.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        // Inverse-CDF radius for uniform density on the disk.
        const double rho = region.radius * std::sqrt(unit(rng));
        const double phi = angle(rng);
        d.positions.push_back({rho * std::cos(phi), rho * std::sin(phi), altitude});
    }
    return d;
}

Deployment apply_tether_exclusion(const Deployment& deployment, const std::vector<Corridor>& corridors,
                                  double exclusion_radius) {
    if (deployment.kind != BsKind::NTFP) {
        log_warning("tether exclusion requested for a non-tethered deployment; ignored");
        return deployment;
    }
    if (!(exclusion_radius >= 0.0)) throw InvalidParameter("exclusion radius must be non-negative");

    Deployment out;
    out.kind = deployment.kind;
    out.altitude = deployment.altitude;
    out.positions.reserve(deployment.positions.size());
    std::copy_if(deployment.positions.begin(), deployment.positions.end(), std::back_inserter(out.positions),
                 [&](const Point3& p) {
                     return std::none_of(corridors.begin(), corridors.end(), [&](const Corridor& c) {
                         return c.distance_to(p) < exclusion_radius;
                     });
                 });
    return out;
}

Chord corridor_chord(const Corridor& c, const Region& region) {
    Chord ch;
    const double nx = -std::sin(c.theta);
    const double ny = std::cos(c.theta);
    ch.dir_x = std::cos(c.theta);
    ch.dir_y = std::sin(c.theta);
    const double rem = region.radius * region.radius - c.offset * c.offset;
    if (rem <= 0.0) return ch;
    const double half = std::sqrt(rem);
    ch.start = {c.offset * nx - half * ch.dir_x, c.offset * ny - half * ch.dir_y, 0.0};
    ch.length = 2.0 * half;
    return ch;
}

std::vector<Point3> sample_evtols(const std::vector<Corridor>& corridors, double linear_density,
                                  const Region& region, Rng& rng) {
    require_density(linear_density, "eVTOL linear density");
    std::vector<Point3> out;
    if (linear_density == 0.0) return out;

    for (const auto& c : corridors) {
        const Chord ch = corridor_chord(c, region);
        if (ch.length <= 0.0) continue;
        std::uniform_real_distribution<double> along(0.0, ch.length);
        for (Level lvl : {Level::LC, Level::HC}) {
            const auto n = poisson_count(linear_density * ch.length, rng);
            const double z = c.altitude(lvl);
            for (std::uint64_t i = 0; i < n; ++i) {
                const double s = along(rng);
                Point3 p{ch.start.x + s * ch.dir_x, ch.start.y + s * ch.dir_y, z};
                // Keep round-off at the chord ends from leaking outside the disk.
                const double h = std::hypot(p.x, p.y);
                if (h > region.radius) {
                    p.x *= region.radius / h;
                    p.y *= region.radius / h;
                }
                out.push_back(p);
            }
        }
    }
    return out;
}

TypicalPlacement place_typical_user(Level level, Rng& rng, CorridorLevels levels) {
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    TypicalPlacement tp;
    tp.corridor.theta = angle(rng);
    tp.corridor.offset = 0.0;
    tp.corridor.level_low_alt = levels.low;
    tp.corridor.level_high_alt = levels.high;
    tp.user = {0.0, 0.0, levels.altitude(level)};
    return tp;
}

}  // namespace uamcov
