#include "uamcov/channel.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace uamcov {

std::string_view to_string(LosModel m) {
    switch (m) {
        case LosModel::Elevation: return "elevation";
        case LosModel::AlwaysLos: return "los";
        case LosModel::AlwaysNlos: return "nlos";
    }
    return "?";
}

LosModel parse_los_model(std::string_view s) {
    if (s == "elevation") return LosModel::Elevation;
    if (s == "los") return LosModel::AlwaysLos;
    if (s == "nlos") return LosModel::AlwaysNlos;
    throw InvalidParameter("unknown LOS model '" + std::string(s) + "' (expected elevation, los or nlos)");
}

void ChannelParams::validate() const {
    if (!(alpha_los > 0.0)) throw InvalidParameter("alpha_los must be positive");
    if (!(alpha_los <= alpha_nlos)) throw InvalidParameter("alpha_nlos must be >= alpha_los");
    if (!(nakagami_m >= 0.5)) throw InvalidParameter("nakagami_m must be >= 0.5");
    if (!(sigmoid_a > 0.0)) throw InvalidParameter("sigmoid_a must be positive");
    if (!(sigmoid_b > 0.0)) throw InvalidParameter("sigmoid_b must be positive");
    if (!(ref_gain > 0.0)) throw InvalidParameter("ref_gain must be positive");
}

double elevation_deg(const Point3& tx, const Point3& rx) {
    const double horiz = horizontal_distance(tx, rx);
    const double dz = std::abs(tx.z - rx.z);
    if (horiz == 0.0) {
        if (dz == 0.0) throw InvalidLink("coincident link endpoints");
        return 90.0;
    }
    return std::atan(dz / horiz) * 180.0 / std::numbers::pi;
}

double sigmoid_los(double elevation, double a, double b) {
    return 1.0 / (1.0 + a * std::exp(-b * (elevation - a)));
}

double los_probability(const Point3& tx, const Point3& rx, bool tx_is_terrestrial,
                       const ChannelParams& params) {
    const double elev = elevation_deg(tx, rx);  // also rejects coincident points
    switch (params.los_model) {
        case LosModel::AlwaysLos: return 1.0;
        case LosModel::AlwaysNlos: return 0.0;
        case LosModel::Elevation: break;
    }
    // Aircraft-to-aircraft links are always clear.
    if (!tx_is_terrestrial) return 1.0;
    return sigmoid_los(elev, params.sigmoid_a, params.sigmoid_b);
}

double path_gain(double distance, bool los, const ChannelParams& params) {
    if (!(distance > 0.0)) throw InvalidLink("link distance must be positive");
    const double d = std::max(distance, 1.0);
    const double alpha = los ? params.alpha_los : params.alpha_nlos;
    return params.ref_gain * std::pow(d, -alpha);
}

double sample_fading(bool los, const ChannelParams& params, Rng& rng) {
    if (los) {
        std::gamma_distribution<double> g(params.nakagami_m, 1.0 / params.nakagami_m);
        return g(rng);
    }
    std::exponential_distribution<double> e(1.0);
    return e(rng);
}

double realize_link(const Point3& tx, const Point3& rx, bool tx_is_terrestrial, double tx_power,
                    const ChannelParams& params, Rng& rng, LinkState* state) {
    if (!(tx_power > 0.0)) throw InvalidParameter("transmit power must be positive");
    const double p_los = los_probability(tx, rx, tx_is_terrestrial, params);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const bool los = unit(rng) < p_los;
    const double d = distance3d(tx, rx);
    if (state != nullptr) {
        state->los = los;
        state->distance3d = d;
        state->elevation_deg = elevation_deg(tx, rx);
    }
    return tx_power * path_gain(d, los, params) * sample_fading(los, params, rng);
}

}  // namespace uamcov
