#include "uamcov/montecarlo.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

namespace uamcov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Two-sided 95% standard normal quantile.
constexpr double kZ95 = 1.959963984540054;

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw InvalidParameter(std::string(field) + " " + what);
}

bool finite_nonneg(double v) { return v >= 0.0 && std::isfinite(v); }

}  // namespace

std::string_view to_string(UplinkInterferers u) {
    return u == UplinkInterferers::AllLevels ? "all" : "same_level";
}

UplinkInterferers parse_uplink_interferers(std::string_view s) {
    if (s == "all") return UplinkInterferers::AllLevels;
    if (s == "same_level") return UplinkInterferers::SameLevel;
    throw InvalidParameter("unknown uplink interferer set '" + std::string(s) + "' (expected all or same_level)");
}

void ScenarioConfig::validate() const {
    require(!name.empty(), "name", "must not be empty");
    require(finite_nonneg(bs_density), "bs_density", "must be non-negative");
    require(finite_nonneg(bs_altitude), "bs_altitude", "must be non-negative");
    require(finite_nonneg(corridor_line_density), "corridor_line_density", "must be non-negative");
    require(finite_nonneg(evtol_linear_density), "evtol_linear_density", "must be non-negative");
    require(region_radius > 0.0 && std::isfinite(region_radius), "region_radius", "must be positive");
    require(finite_nonneg(exclusion_radius), "exclusion_radius", "must be non-negative");
    require(bs_tx_power > 0.0 && std::isfinite(bs_tx_power), "bs_tx_power", "must be positive");
    require(evtol_tx_power > 0.0 && std::isfinite(evtol_tx_power), "evtol_tx_power", "must be positive");
    require(finite_nonneg(level_low_alt), "level_low_alt", "must be non-negative");
    require(level_low_alt < level_high_alt && std::isfinite(level_high_alt), "level_high_alt",
            "must be greater than level_low_alt");
    channel.validate();
}

Realization sample_realization(const ScenarioConfig& config, Rng& rng) {
    const Region region(config.region_radius);
    Realization r;
    r.corridors = sample_corridors(config.corridor_line_density, region, rng, config.levels());
    auto typical = place_typical_user(config.level, rng, config.levels());
    r.corridors.push_back(typical.corridor);
    r.user = typical.user;

    r.deployment = sample_bs(config.bs_kind, config.bs_density, config.bs_altitude, region, rng);
    if (config.bs_kind == BsKind::NTFP) {
        r.deployment = apply_tether_exclusion(r.deployment, r.corridors, config.exclusion_radius);
    }
    r.evtols = sample_evtols(r.corridors, config.evtol_linear_density, region, rng);
    return r;
}

std::size_t associate(const Point3& user, const Deployment& deployment) {
    if (deployment.empty()) throw NoServer("no base station available");
    std::size_t best = 0;
    double best_d = distance3d(user, deployment.positions[0]);
    for (std::size_t i = 1; i < deployment.positions.size(); ++i) {
        const double d = distance3d(user, deployment.positions[i]);
        if (d < best_d) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

double sir_sample_dl(const Realization& r, const ScenarioConfig& config, Rng& rng) {
    if (r.deployment.empty()) return 0.0;
    const std::size_t serving = associate(r.user, r.deployment);
    const bool terrestrial = !is_aerial(r.deployment.kind);
    const auto& ch = config.channel;

    // Powers enter as a single ratio so the SIR is exactly invariant to a
    // common power scale.
    const double signal = realize_link(r.deployment.positions[serving], r.user, terrestrial, 1.0, ch, rng);
    double interference = 0.0;
    for (std::size_t i = 0; i < r.deployment.positions.size(); ++i) {
        if (i == serving) continue;
        interference += realize_link(r.deployment.positions[i], r.user, terrestrial, 1.0, ch, rng);
    }
    if (interference == 0.0) return kInf;
    return (signal / interference) * (config.bs_tx_power / config.bs_tx_power);
}

double sir_sample_ul(const Realization& r, const ScenarioConfig& config, Rng& rng) {
    if (r.deployment.empty()) return 0.0;
    const std::size_t serving = associate(r.user, r.deployment);
    const Point3& bs = r.deployment.positions[serving];
    // A CT end makes the link air-to-ground regardless of direction.
    const bool terrestrial = !is_aerial(r.deployment.kind);
    const auto& ch = config.channel;

    const double signal = realize_link(r.user, bs, terrestrial, 1.0, ch, rng);
    double interference = 0.0;
    for (const auto& e : r.evtols) {
        if (config.ul_interferers == UplinkInterferers::SameLevel && e.z != r.user.z) continue;
        interference += realize_link(e, bs, terrestrial, 1.0, ch, rng);
    }
    if (interference == 0.0) return kInf;
    return (signal / interference) * (config.evtol_tx_power / config.evtol_tx_power);
}

double sir_sample(const ScenarioConfig& config, Rng& rng) {
    const Realization r = sample_realization(config, rng);
    return config.direction == Direction::DL ? sir_sample_dl(r, config, rng) : sir_sample_ul(r, config, rng);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw InvalidParameter("Wilson interval needs at least one trial");
    if (successes > trials) throw InvalidParameter("successes exceed trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    Interval iv{std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
    iv.low = std::min(iv.low, p);
    iv.high = std::max(iv.high, p);
    return iv;
}

std::vector<double> sample_sir(const ScenarioConfig& config, std::uint64_t trials, std::uint64_t seed,
                               EstimateOptions options) {
    config.validate();
    std::vector<double> samples(trials);

    unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(trials, 1)));

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng = trial_stream(seed, i);
            samples[i] = sir_sample(config, rng);
        }
    };

    if (workers <= 1) {
        run_range(0, trials);
        return samples;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min<std::uint64_t>(trials, w * chunk);
        const std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                run_range(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return samples;
}

CoverageCurve estimate_coverage(const ScenarioConfig& config, std::span<const double> thresholds_db,
                                std::uint64_t trials, std::uint64_t seed, EstimateOptions options) {
    if (trials < 1) throw InvalidParameter("trials must be at least 1");
    if (!std::is_sorted(thresholds_db.begin(), thresholds_db.end())) {
        throw InvalidParameter("thresholds must be sorted ascending");
    }
    for (double t : thresholds_db) {
        if (!std::isfinite(t)) throw InvalidParameter("thresholds must be finite");
    }

    CoverageCurve curve;
    curve.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
    curve.trials = trials;
    curve.seed = seed;
    curve.scenario = config;
    char radius[32];
    std::snprintf(radius, sizeof radius, "%g", config.region_radius);
    curve.notes.push_back(std::string("interference from outside the ") + radius +
                          " m simulation disk is neglected (edge-effect bias)");
    if (config.bs_density == 0.0) {
        const std::string msg = "scenario '" + config.name + "' has zero base-station density; coverage is 0";
        log_warning(msg);
        curve.notes.push_back(msg);
    }

    const std::vector<double> samples = sample_sir(config, trials, seed, options);

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    for (double t_db : curve.thresholds_db) {
        const double t = db_to_linear(t_db);
        const auto covered = static_cast<std::uint64_t>(sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), t));
        const Interval iv = wilson_interval(covered, trials);
        curve.pcov.push_back(static_cast<double>(covered) / static_cast<double>(trials));
        curve.ci_low.push_back(iv.low);
        curve.ci_high.push_back(iv.high);
    }
    return curve;
}

double closed_form_oracle(double threshold_linear) {
    if (!(threshold_linear > 0.0)) throw InvalidParameter("threshold must be positive");
    const double s = std::sqrt(threshold_linear);
    const double rho = s * (std::numbers::pi / 2.0 - std::atan(1.0 / s));
    return 1.0 / (1.0 + rho);
}

}  // namespace uamcov
