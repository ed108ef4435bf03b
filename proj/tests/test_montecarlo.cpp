#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "uamcov/config.hpp"
#include "uamcov/montecarlo.hpp"

using namespace uamcov;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScenarioConfig deterministic_aerial() {
    ScenarioConfig c;
    c.bs_kind = BsKind::UAV;
    c.channel.nakagami_m = 1e6;
    return c;
}

Realization manual(BsKind kind, std::vector<Point3> bss, std::vector<Point3> evtols, Point3 user) {
    Realization r;
    r.deployment.kind = kind;
    r.deployment.positions = std::move(bss);
    r.evtols = std::move(evtols);
    r.user = user;
    r.corridors.push_back({0.0, 0.0, 300.0, 500.0});
    return r;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("associate picks the nearest base station") {
    const Point3 user{0, 0, 0};
    Deployment d{BsKind::CT, {{500, 0, 0}, {0, 300, 0}, {-900, 0, 0}}, 0.0};
    CHECK(associate(user, d) == 1);

    Deployment tie{BsKind::CT, {{700, 0, 0}, {0, 400, 0}, {0, -400, 0}}, 0.0};
    CHECK(associate(user, tie) == 1);

    CHECK_THROWS_AS(associate(user, Deployment{}), NoServer);
}

TEST_CASE("downlink SIR edge cases") {
    const auto cfg = deterministic_aerial();
    Rng rng(1);

    SUBCASE("single BS has no interference") {
        const auto r = manual(BsKind::UAV, {{100, 0, 600}}, {}, {0, 0, 300});
        CHECK(sir_sample_dl(r, cfg, rng) == kInf);
    }
    SUBCASE("two equidistant LOS BSs give 0 dB") {
        const auto r = manual(BsKind::UAV, {{400, 0, 600}, {-400, 0, 600}}, {}, {0, 0, 300});
        CHECK(sir_sample_dl(r, cfg, rng) == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("no server is an outage") {
        const auto r = manual(BsKind::UAV, {}, {}, {0, 0, 300});
        CHECK(sir_sample_dl(r, cfg, rng) == 0.0);
        CHECK(sir_sample_ul(r, cfg, rng) == 0.0);
    }
}

TEST_CASE("uplink SIR edge cases") {
    auto cfg = deterministic_aerial();
    cfg.direction = Direction::UL;
    Rng rng(2);

    SUBCASE("no aircraft, no interference") {
        const auto r = manual(BsKind::UAV, {{100, 0, 600}, {3000, 0, 600}}, {}, {0, 0, 300});
        CHECK(sir_sample_ul(r, cfg, rng) == kInf);
    }
    SUBCASE("co-located interferer gives 0 dB") {
        const auto r = manual(BsKind::UAV, {{100, 0, 600}}, {{0, 0, 300}}, {0, 0, 300});
        CHECK(sir_sample_ul(r, cfg, rng) == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("interferer set follows ul_interferers") {
        const auto r = manual(BsKind::UAV, {{100, 0, 600}}, {{0, 0, 500}}, {0, 0, 300});
        cfg.ul_interferers = UplinkInterferers::SameLevel;
        CHECK(sir_sample_ul(r, cfg, rng) == kInf);
        cfg.ul_interferers = UplinkInterferers::AllLevels;
        CHECK(std::isfinite(sir_sample_ul(r, cfg, rng)));
    }
    SUBCASE("zero eVTOL density covers every finite threshold") {
        ScenarioConfig c;
        c.direction = Direction::UL;
        c.evtol_linear_density = 0.0;
        const std::vector<double> th{-10, 0, 30, 60};
        const auto curve = estimate_coverage(c, th, 500, 3);
        for (double p : curve.pcov) CHECK(p == 1.0);
    }
}

TEST_CASE("mean uplink interference is linear in eVTOL density") {
    // Brute-force interference sums at the serving BS, density 1/km vs 2/km.
    auto mean_interference = [](double density) {
        ScenarioConfig c;
        c.direction = Direction::UL;
        c.evtol_linear_density = density;
        double total = 0.0;
        constexpr int n = 100000;
        for (int i = 0; i < n; ++i) {
            Rng rng = trial_stream(77, i);
            const auto r = sample_realization(c, rng);
            if (r.deployment.empty()) continue;
            const Point3 bs = r.deployment.positions[associate(r.user, r.deployment)];
            for (const auto& e : r.evtols) total += realize_link(e, bs, false, 1.0, c.channel, rng);
        }
        return total / n;
    };
    const double base = mean_interference(1e-3);
    const double doubled = mean_interference(2e-3);
    CHECK(doubled / base == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("closed_form_oracle agrees with numerical integration") {
    for (double t_db : {-60.0, -10.0, -5.0, 0.0, 5.0, 10.0, 20.0}) {
        const double t = db_to_linear(t_db);
        CAPTURE(t_db);
        CHECK(closed_form_oracle(t) == doctest::Approx(oracle::coverage_numeric(t)).epsilon(1e-7));
    }
    CHECK(closed_form_oracle(1.0) == doctest::Approx(0.5600992).epsilon(1e-6));
    CHECK(closed_form_oracle(10.0) == doctest::Approx(0.2000496).epsilon(1e-6));
    CHECK(closed_form_oracle(1e-12) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(closed_form_oracle(1e-6) >= 0.99);
    CHECK_THROWS_AS(closed_form_oracle(0.0), InvalidParameter);
    CHECK_THROWS_AS(closed_form_oracle(-1.0), InvalidParameter);
}

TEST_CASE("Wilson interval") {
    // Reference values from an independent Wilson implementation.
    auto iv = wilson_interval(50, 100);
    CHECK(iv.low == doctest::Approx(0.4038315).epsilon(1e-6));
    CHECK(iv.high == doctest::Approx(0.5961685).epsilon(1e-6));
    iv = wilson_interval(0, 10);
    CHECK(iv.low == 0.0);
    CHECK(iv.high == doctest::Approx(0.2775328).epsilon(1e-6));
    iv = wilson_interval(10, 10);
    CHECK(iv.low == doctest::Approx(0.7224672).epsilon(1e-6));
    CHECK(iv.high == 1.0);
    iv = wilson_interval(3, 1000);
    CHECK(iv.low == doctest::Approx(0.0010208).epsilon(1e-4));
    CHECK(iv.high == doctest::Approx(0.0087830).epsilon(1e-4));
    CHECK_THROWS_AS(wilson_interval(0, 0), InvalidParameter);
    CHECK_THROWS_AS(wilson_interval(5, 4), InvalidParameter);
}

TEST_CASE("estimate_coverage contract") {
    ScenarioConfig cfg;
    const std::vector<double> th{-20, -10, -5, 0, 5, 10, 20};

    SUBCASE("curve shape and bounds") {
        const auto c = estimate_coverage(cfg, th, 2000, 9);
        REQUIRE(c.pcov.size() == th.size());
        for (std::size_t i = 0; i < th.size(); ++i) {
            CHECK(0.0 <= c.ci_low[i]);
            CHECK(c.ci_low[i] <= c.pcov[i]);
            CHECK(c.pcov[i] <= c.ci_high[i]);
            CHECK(c.ci_high[i] <= 1.0);
            if (i > 0) CHECK(c.pcov[i] <= c.pcov[i - 1]);
        }
        CHECK(!c.notes.empty());
    }
    SUBCASE("same seed is bit-identical, any worker count") {
        for (auto kind : {BsKind::CT, BsKind::NTFP}) {
            cfg.bs_kind = kind;
            cfg.direction = Direction::UL;
            const auto a = sample_sir(cfg, 3000, 5, {1});
            const auto b = sample_sir(cfg, 3000, 5, {1});
            const auto c = sample_sir(cfg, 3000, 5, {4});
            const auto d = sample_sir(cfg, 3000, 5, {7});
            CHECK(a == b);
            CHECK(a == c);
            CHECK(a == d);
        }
    }
    SUBCASE("different seeds differ") {
        CHECK(sample_sir(cfg, 200, 1) != sample_sir(cfg, 200, 2));
    }
    SUBCASE("zero BS density gives zero coverage with a warning") {
        cfg.bs_density = 0.0;
        const auto c = estimate_coverage(cfg, th, 100, 1);
        for (double p : c.pcov) CHECK(p == 0.0);
        CHECK(c.notes.size() == 2);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(estimate_coverage(cfg, th, 0, 1), InvalidParameter);
        const std::vector<double> unsorted{0, -5};
        CHECK_THROWS_AS(estimate_coverage(cfg, unsorted, 10, 1), InvalidParameter);
        cfg.bs_density = -1.0;
        CHECK_THROWS_AS(estimate_coverage(cfg, th, 10, 1), InvalidParameter);
    }
}

TEST_CASE("SIR is exactly invariant to a common power scale") {
    for (auto kind : {BsKind::CT, BsKind::UAV, BsKind::NTFP}) {
        for (auto dir : {Direction::DL, Direction::UL}) {
            ScenarioConfig a;
            a.bs_kind = kind;
            a.bs_altitude = default_bs_altitude(kind);
            a.direction = dir;
            ScenarioConfig b = a;
            b.bs_tx_power *= 7.3;
            b.evtol_tx_power *= 7.3;
            for (std::uint64_t i = 0; i < 300; ++i) {
                Rng ra = trial_stream(99, i);
                Rng rb = trial_stream(99, i);
                REQUIRE(sir_sample(a, ra) == sir_sample(b, rb));
            }
        }
    }
}

TEST_CASE("oracle preset tracks the closed form") {
    const auto cfg = preset("oracle");
    const std::vector<double> th{-60, -10, 0, 10};
    const auto c = estimate_coverage(cfg, th, 20000, 4);
    CHECK(c.pcov[0] >= 0.99);
    for (std::size_t i = 1; i < th.size(); ++i) {
        CAPTURE(th[i]);
        CHECK(std::abs(c.pcov[i] - closed_form_oracle(db_to_linear(th[i]))) <= 0.02);
    }
}

TEST_CASE("interference-limited coverage does not depend on BS density") {
    const std::vector<double> th{-10, -5, 0, 5, 10};
    std::vector<CoverageCurve> curves;
    for (double per_100km2 : {20.0, 40.0, 80.0}) {
        auto cfg = preset("oracle");
        cfg.bs_density = per_100km2 / 1e8;
        curves.push_back(estimate_coverage(cfg, th, 20000, 8));
    }
    for (std::size_t a = 0; a < curves.size(); ++a) {
        for (std::size_t b = a + 1; b < curves.size(); ++b) {
            for (std::size_t i = 0; i < th.size(); ++i) {
                const double tol = 2.0 * std::max(curves[a].half_width(i), curves[b].half_width(i));
                CHECK(std::abs(curves[a].pcov[i] - curves[b].pcov[i]) <= tol);
            }
        }
    }
}

}  // TEST_SUITE
