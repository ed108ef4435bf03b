#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uamcov/montecarlo.hpp"

namespace uamcov {

/// Configuration error carrying the offending key and 1-based line number
/// (line 0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::string key, const std::string& message);

    std::size_t line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

struct RunSpec {
    std::vector<ScenarioConfig> scenarios;
    std::vector<double> thresholds_db{-20, -15, -10, -5, 0, 5, 10, 15, 20, 25, 30};
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    std::filesystem::path output_path = "coverage.csv";

    friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

/// Scenario presets: "ct", "uav", "ntfp" carry the case-study parameters,
/// "oracle" is the degenerate planar Rayleigh network that
/// closed_form_oracle describes.
ScenarioConfig preset(std::string_view name, Direction direction = Direction::DL, Level level = Level::LC);

/// "<prefix>_<direction>_<level>", e.g. "uav_dl_lc".
std::string default_scenario_name(std::string_view prefix, Direction direction, Level level);

/// Parses a `key = value` document with `[run]`, `[scenario NAME]` and
/// `[channel]` sections. See docs/config.md for the schema.
RunSpec parse_config(std::string_view text);

/// Renders every field explicitly; parse_config(render_config(s)) == s.
std::string render_config(const RunSpec& spec);

/// Throws ParseError (line 0) if the spec violates its invariants.
void validate(const RunSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "scenario,bs_kind,direction,level,threshold_db,pcov,ci_low,ci_high,trials,seed";

std::string render_csv(const std::vector<CoverageCurve>& curves);

struct RunOptions {
    unsigned workers = 1;
};

/// Estimates every scenario in order and writes the CSV atomically
/// (temporary file, then rename). Throws std::runtime_error on I/O failure.
std::vector<CoverageCurve> run(const RunSpec& spec, RunOptions options = {});

void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

struct ReliabilityTarget {
    double target = 0.999;
    double threshold_db = 0.0;
};

struct ReliabilityResult {
    bool pass = false;
    double pcov = 0.0;    // interpolated coverage at the query threshold
    double margin = 0.0;  // pcov - target
};

/// Reads the curve at target.threshold_db (linear interpolation between grid
/// points) and compares it with the reliability target.
ReliabilityResult check_reliability(const CoverageCurve& curve, const ReliabilityTarget& target);

}  // namespace uamcov
