#pragma once

#include "uamcov/rng.hpp"
#include "uamcov/types.hpp"

namespace uamcov {

/// How the line-of-sight state of a terrestrial link is decided.
/// `Elevation` is the sigmoid model; the forced modes exist for validation
/// runs against closed-form results.
enum class LosModel { Elevation, AlwaysLos, AlwaysNlos };

std::string_view to_string(LosModel m);
LosModel parse_los_model(std::string_view s);

struct ChannelParams {
    double alpha_los = 2.0;
    double alpha_nlos = 4.0;
    double nakagami_m = 3.0;
    double sigmoid_a = 9.61;
    double sigmoid_b = 0.16;  // per degree
    double ref_gain = 1.0;    // path gain at 1 m
    LosModel los_model = LosModel::Elevation;

    /// Throws InvalidParameter if any invariant is violated.
    void validate() const;

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

struct LinkState {
    bool los = false;
    double distance3d = 0.0;
    double elevation_deg = 0.0;  // [0, 90]
};

/// Elevation of the link in degrees, 90 when one end is directly above
/// the other. Throws InvalidLink for coincident points.
double elevation_deg(const Point3& tx, const Point3& rx);

double los_probability(const Point3& tx, const Point3& rx, bool tx_is_terrestrial,
                       const ChannelParams& params);

/// Sigmoid LOS probability at a given elevation angle (degrees).
double sigmoid_los(double elevation_deg, double a, double b);

double path_gain(double distance3d, bool los, const ChannelParams& params);

/// Unit-mean power gain: Gamma(m, 1/m) for LOS, Exp(1) for NLOS.
double sample_fading(bool los, const ChannelParams& params, Rng& rng);

/// Draws the LOS state once, then the received power including path gain
/// and small-scale fading.
double realize_link(const Point3& tx, const Point3& rx, bool tx_is_terrestrial, double tx_power,
                    const ChannelParams& params, Rng& rng, LinkState* state = nullptr);

}  // namespace uamcov
