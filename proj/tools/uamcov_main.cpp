// Command-line driver: builds a RunSpec from a config file or a preset,
// runs every scenario and writes the coverage CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "uamcov/config.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitRuntime = 3;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw uamcov::ParseError(0, "--config", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Re-derives "<prefix>_<dir>_<level>" names after a direction/level override.
void retarget(uamcov::ScenarioConfig& s, std::optional<uamcov::Direction> dir, std::optional<uamcov::Level> lvl) {
    const std::string old_suffix =
        "_" + std::string(to_string(s.direction)) + "_" + std::string(to_string(s.level));
    if (dir) s.direction = *dir;
    if (lvl) s.level = *lvl;
    if (s.name.size() > old_suffix.size() && s.name.ends_with(old_suffix)) {
        s.name = uamcov::default_scenario_name(s.name.substr(0, s.name.size() - old_suffix.size()), s.direction,
                                               s.level);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo SIR coverage of eVTOL users in Poisson-line air corridors"};

    std::string config_path;
    std::string preset_name;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> output;
    std::string direction;
    std::string level;
    unsigned workers = 1;
    std::optional<double> rel_target;
    std::optional<double> rel_threshold;
    bool print_config = false;

    auto* cfg_opt = app.add_option("--config", config_path, "Configuration file (key = value)");
    app.add_option("--preset", preset_name, "Scenario preset")
        ->check(CLI::IsMember({"ct", "uav", "ntfp", "oracle"}))
        ->excludes(cfg_opt);
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--trials", trials, "Monte Carlo trials per scenario")->check(CLI::PositiveNumber);
    app.add_option("--output", output, "Output CSV path");
    app.add_option("--direction", direction, "Override link direction")->check(CLI::IsMember({"dl", "ul"}));
    app.add_option("--level", level, "Override corridor level of the typical user")->check(CLI::IsMember({"lc", "hc"}));
    app.add_option("--workers", workers, "Worker threads (0 = all cores); never changes the output")
        ->check(CLI::NonNegativeNumber);
    auto* tgt = app.add_option("--reliability-target", rel_target, "Required coverage, e.g. 0.999");
    auto* thr = app.add_option("--reliability-threshold-db", rel_threshold, "SIR threshold at which to read coverage");
    tgt->needs(thr);
    thr->needs(tgt);
    app.add_flag("--print-config", print_config, "Print the fully resolved configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    uamcov::RunSpec spec;
    try {
        if (!config_path.empty()) {
            spec = uamcov::parse_config(read_file(config_path));
        } else {
            spec.scenarios = {uamcov::preset(preset_name.empty() ? "uav" : preset_name)};
        }
        const auto dir = direction.empty() ? std::nullopt : std::optional(uamcov::parse_direction(direction));
        const auto lvl = level.empty() ? std::nullopt : std::optional(uamcov::parse_level(level));
        for (auto& s : spec.scenarios) retarget(s, dir, lvl);
        if (seed) spec.seed = *seed;
        if (trials) spec.trials = *trials;
        if (output) spec.output_path = *output;
        uamcov::validate(spec);
        if (rel_target && !(*rel_target > 0.0 && *rel_target < 1.0)) {
            throw uamcov::ParseError(0, "--reliability-target", "must lie in (0, 1)");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }

    if (print_config) {
        std::cout << uamcov::render_config(spec);
        return 0;
    }

    std::vector<uamcov::CoverageCurve> curves;
    try {
        curves = uamcov::run(spec, {workers});
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    for (const auto& c : curves) {
        std::cerr << c.scenario.name << ": " << c.trials << " trials, seed " << c.seed << '\n';
        for (const auto& note : c.notes) std::cerr << "  note: " << note << '\n';
    }
    std::cerr << "wrote " << spec.output_path.string() << '\n';

    if (rel_target) {
        bool ok = true;
        for (const auto& c : curves) {
            try {
                const auto r = uamcov::check_reliability(c, {*rel_target, *rel_threshold});
                std::printf("reliability %s: pcov=%.6g target=%.6g margin=%+.6g %s\n", c.scenario.name.c_str(), r.pcov,
                            *rel_target, r.margin, r.pass ? "PASS" : "FAIL");
            } catch (const uamcov::OutOfRange& e) {
                std::cerr << "error: " << e.what() << '\n';
                ok = false;
            }
        }
        if (!ok) return kExitParse;
    }
    return 0;
}
