#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uamcov/channel.hpp"
#include "uamcov/geometry.hpp"

namespace uamcov {

/// Which aircraft interfere with the typical user's uplink.
enum class UplinkInterferers { AllLevels, SameLevel };

std::string_view to_string(UplinkInterferers u);
UplinkInterferers parse_uplink_interferers(std::string_view s);

struct ScenarioConfig {
    std::string name = "uav_dl_lc";
    BsKind bs_kind = BsKind::UAV;
    double bs_density = 4e-7;  // per m^2 (40 per 100 km^2)
    double bs_altitude = 600.0;
    double corridor_line_density = 5e-4;  // per m of offset axis
    double evtol_linear_density = 1e-3;   // per m of corridor, per level
    double region_radius = 5000.0;
    double exclusion_radius = 200.0;
    double bs_tx_power = 1.0;
    double evtol_tx_power = 1.0;
    double level_low_alt = 300.0;
    double level_high_alt = 500.0;
    ChannelParams channel{};
    Level level = Level::LC;
    Direction direction = Direction::DL;
    UplinkInterferers ul_interferers = UplinkInterferers::SameLevel;

    CorridorLevels levels() const { return {level_low_alt, level_high_alt}; }

    /// Throws InvalidParameter naming the offending field.
    void validate() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// One sampled snapshot of the network around the typical user.
struct Realization {
    std::vector<Corridor> corridors;  // last entry is the typical corridor
    Deployment deployment;
    std::vector<Point3> evtols;  // excludes the typical user
    Point3 user;
};

Realization sample_realization(const ScenarioConfig& config, Rng& rng);

/// Index of the base station nearest (3-D) to the user; ties go to the
/// lowest index. Throws NoServer on an empty deployment.
std::size_t associate(const Point3& user, const Deployment& deployment);

/// Linear SIR sample. +inf when there is no interference, 0 when no base
/// station can serve the user (an outage at every threshold).
double sir_sample_dl(const Realization& r, const ScenarioConfig& config, Rng& rng);
double sir_sample_ul(const Realization& r, const ScenarioConfig& config, Rng& rng);

/// Samples a fresh realization and returns the SIR for the configured
/// link direction.
double sir_sample(const ScenarioConfig& config, Rng& rng);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Wilson score interval at 95% confidence.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct CoverageCurve {
    std::vector<double> thresholds_db;
    std::vector<double> pcov;
    std::vector<double> ci_low;
    std::vector<double> ci_high;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    ScenarioConfig scenario;
    std::vector<std::string> notes;  // warnings and caveats attached to the estimate

    double half_width(std::size_t i) const { return 0.5 * (ci_high[i] - ci_low[i]); }
};

struct EstimateOptions {
    unsigned workers = 1;  // 0 = hardware concurrency
};

/// Monte Carlo coverage estimate. Trial i always uses trial_stream(seed, i),
/// so the output is identical for any worker count.
CoverageCurve estimate_coverage(const ScenarioConfig& config, std::span<const double> thresholds_db,
                                std::uint64_t trials, std::uint64_t seed, EstimateOptions options = {});

/// Raw SIR samples in trial order, one per trial.
std::vector<double> sample_sir(const ScenarioConfig& config, std::uint64_t trials, std::uint64_t seed,
                               EstimateOptions options = {});

/// Interference-limited downlink coverage of a 2-D PPP network with
/// Rayleigh fading, path-loss exponent 4 and nearest-BS association.
double closed_form_oracle(double threshold_linear);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace uamcov
