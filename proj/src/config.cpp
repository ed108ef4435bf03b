#include "uamcov/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace uamcov {

ParseError::ParseError(std::size_t line, std::string key, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + key + ": " + message
                                  : key + ": " + message),
      line_(line),
      key_(std::move(key)) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    auto b = std::find_if(s.begin(), s.end(), not_space);
    auto e = std::find_if(s.rbegin(), s.rend(), not_space).base();
    return b < e ? std::string_view(&*b, static_cast<std::size_t>(e - b)) : std::string_view{};
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool valid_name(std::string_view name) {
    return !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
    });
}

struct Ctx {
    std::size_t line;
    std::string key;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, key, msg); }

    double number(std::string_view v) const {
        double out = 0.0;
        const auto* end = v.data() + v.size();
        auto [ptr, ec] = std::from_chars(v.data(), end, out);
        if (v.empty() || ec != std::errc{} || ptr != end || !std::isfinite(out)) {
            fail("malformed number '" + std::string(v) + "'");
        }
        return out;
    }

    std::uint64_t integer(std::string_view v) const {
        std::uint64_t out = 0;
        const auto* end = v.data() + v.size();
        auto [ptr, ec] = std::from_chars(v.data(), end, out);
        if (v.empty() || ec != std::errc{} || ptr != end) fail("malformed integer '" + std::string(v) + "'");
        return out;
    }

    double non_negative(std::string_view v) const {
        const double x = number(v);
        if (x < 0.0) fail("must be non-negative");
        return x;
    }

    double positive(std::string_view v) const {
        const double x = number(v);
        if (!(x > 0.0)) fail("must be positive");
        return x;
    }

    template <typename F>
    auto enumerated(F&& parse, std::string_view v) const {
        try {
            return parse(v);
        } catch (const InvalidParameter& e) {
            fail(e.what());
        }
    }
};

struct ScenarioBuilder {
    ScenarioConfig cfg;
    std::string prefix = "uav";
    std::optional<std::string> name;
    bool altitude_explicit = false;
    bool kind_explicit = false;
    std::size_t header_line = 0;
    std::map<std::string, std::size_t> key_lines;
};

using ScenarioSetter = std::function<void(ScenarioBuilder&, const Ctx&, std::string_view)>;
using ChannelSetter = std::function<void(ChannelParams&, const Ctx&, std::string_view)>;

const std::map<std::string, ScenarioSetter, std::less<>>& scenario_keys() {
    static const std::map<std::string, ScenarioSetter, std::less<>> keys = {
        {"bs_kind",
         [](ScenarioBuilder& b, const Ctx& c, std::string_view v) {
             b.cfg.bs_kind = c.enumerated(parse_bs_kind, v);
             b.kind_explicit = true;
             b.prefix = std::string(to_string(b.cfg.bs_kind));
         }},
        {"bs_density", [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.bs_density = c.non_negative(v); }},
        {"bs_altitude",
         [](ScenarioBuilder& b, const Ctx& c, std::string_view v) {
             b.cfg.bs_altitude = c.non_negative(v);
             b.altitude_explicit = true;
         }},
        {"corridor_line_density",
         [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.corridor_line_density = c.non_negative(v); }},
        {"evtol_linear_density",
         [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.evtol_linear_density = c.non_negative(v); }},
        {"region_radius", [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.region_radius = c.positive(v); }},
        {"exclusion_radius",
         [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.exclusion_radius = c.non_negative(v); }},
        {"bs_tx_power", [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.bs_tx_power = c.positive(v); }},
        {"evtol_tx_power", [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.evtol_tx_power = c.positive(v); }},
        {"level_low_alt", [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.level_low_alt = c.non_negative(v); }},
        {"level_high_alt", [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.level_high_alt = c.non_negative(v); }},
        {"level", [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.level = c.enumerated(parse_level, v); }},
        {"direction",
         [](ScenarioBuilder& b, const Ctx& c, std::string_view v) { b.cfg.direction = c.enumerated(parse_direction, v); }},
        {"ul_interferers",
         [](ScenarioBuilder& b, const Ctx& c, std::string_view v) {
             b.cfg.ul_interferers = c.enumerated(parse_uplink_interferers, v);
         }},
    };
    return keys;
}

const std::map<std::string, ChannelSetter, std::less<>>& channel_keys() {
    static const std::map<std::string, ChannelSetter, std::less<>> keys = {
        {"alpha_los", [](ChannelParams& p, const Ctx& c, std::string_view v) { p.alpha_los = c.positive(v); }},
        {"alpha_nlos", [](ChannelParams& p, const Ctx& c, std::string_view v) { p.alpha_nlos = c.positive(v); }},
        {"nakagami_m",
         [](ChannelParams& p, const Ctx& c, std::string_view v) {
             p.nakagami_m = c.number(v);
             if (!(p.nakagami_m >= 0.5)) c.fail("must be >= 0.5");
         }},
        {"sigmoid_a", [](ChannelParams& p, const Ctx& c, std::string_view v) { p.sigmoid_a = c.positive(v); }},
        {"sigmoid_b", [](ChannelParams& p, const Ctx& c, std::string_view v) { p.sigmoid_b = c.positive(v); }},
        {"ref_gain", [](ChannelParams& p, const Ctx& c, std::string_view v) { p.ref_gain = c.positive(v); }},
        {"los_model",
         [](ChannelParams& p, const Ctx& c, std::string_view v) { p.los_model = c.enumerated(parse_los_model, v); }},
    };
    return keys;
}

std::vector<double> parse_thresholds(const Ctx& c, std::string_view v) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
        const auto comma = v.find(',', pos);
        const auto tok = trim(v.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        out.push_back(c.number(tok));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (!(out[i] > out[i - 1])) c.fail("thresholds must be strictly ascending");
    }
    return out;
}

enum class Section { Top, Run, Scenario, Channel };

ScenarioConfig finalize(ScenarioBuilder& b) {
    if (!b.altitude_explicit && b.kind_explicit) b.cfg.bs_altitude = default_bs_altitude(b.cfg.bs_kind);
    b.cfg.name = b.name ? *b.name : default_scenario_name(b.prefix, b.cfg.direction, b.cfg.level);
    try {
        b.cfg.validate();
    } catch (const InvalidParameter& e) {
        const std::string msg = e.what();
        const std::string key = msg.substr(0, msg.find(' '));
        const auto it = b.key_lines.find(key);
        throw ParseError(it != b.key_lines.end() ? it->second : b.header_line, key, msg);
    }
    return b.cfg;
}

}  // namespace

std::string default_scenario_name(std::string_view prefix, Direction direction, Level level) {
    return std::string(prefix) + "_" + std::string(to_string(direction)) + "_" + std::string(to_string(level));
}

ScenarioConfig preset(std::string_view name, Direction direction, Level level) {
    ScenarioConfig s;
    s.direction = direction;
    s.level = level;
    if (name == "ct") {
        s.bs_kind = BsKind::CT;
    } else if (name == "uav") {
        s.bs_kind = BsKind::UAV;
    } else if (name == "ntfp") {
        s.bs_kind = BsKind::NTFP;
    } else if (name == "oracle") {
        // Planar network: BSs and user on the ground, every link NLOS
        // (Rayleigh, exponent 4), no aircraft. The wide window keeps the
        // truncated interference below the oracle tolerance.
        s.bs_kind = BsKind::CT;
        s.bs_altitude = 0.0;
        s.level_low_alt = 0.0;
        s.corridor_line_density = 0.0;
        s.evtol_linear_density = 0.0;
        s.exclusion_radius = 0.0;
        s.region_radius = 20000.0;
        s.channel.los_model = LosModel::AlwaysNlos;
        s.name = default_scenario_name(name, direction, level);
        return s;
    } else {
        throw InvalidParameter("unknown preset '" + std::string(name) + "' (expected ct, uav, ntfp or oracle)");
    }
    s.bs_altitude = default_bs_altitude(s.bs_kind);
    s.name = default_scenario_name(name, direction, level);
    return s;
}

RunSpec parse_config(std::string_view text) {
    RunSpec spec;
    ChannelParams base_channel;
    std::vector<ScenarioBuilder> builders;
    Section section = Section::Top;
    // Scenario keys before any section header describe one implicit scenario.
    bool implicit = false;
    std::set<std::string> seen;  // keys in the current section

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, std::string(line), "unterminated section header");
            const auto inner = trim(line.substr(1, line.size() - 2));
            const auto sp = inner.find_first_of(" \t");
            const auto head = inner.substr(0, sp);
            const auto arg = sp == std::string_view::npos ? std::string_view{} : trim(inner.substr(sp));
            seen.clear();
            if (head == "run" && arg.empty()) {
                section = Section::Run;
            } else if (head == "channel" && arg.empty()) {
                section = Section::Channel;
            } else if (head == "scenario") {
                ScenarioBuilder b;
                b.cfg.channel = base_channel;
                b.header_line = line_no;
                if (!arg.empty()) {
                    if (!valid_name(arg)) {
                        throw ParseError(line_no, "scenario", "invalid scenario name '" + std::string(arg) + "'");
                    }
                    b.name = std::string(arg);
                }
                builders.push_back(std::move(b));
                section = Section::Scenario;
            } else {
                throw ParseError(line_no, std::string(inner), "unknown section");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, std::string(line), "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        const Ctx ctx{line_no, key};
        if (!seen.insert(key).second) ctx.fail("duplicate key");

        Section effective = section;
        if (section == Section::Top) {
            if (key == "trials" || key == "seed" || key == "thresholds_db" || key == "output") {
                effective = Section::Run;
            } else if (const auto it = channel_keys().find(key); it != channel_keys().end()) {
                it->second(base_channel, ctx, value);
                if (implicit) it->second(builders.front().cfg.channel, ctx, value);
                continue;
            } else {
                if (!implicit) {
                    ScenarioBuilder b;
                    b.cfg.channel = base_channel;
                    b.header_line = line_no;
                    builders.push_back(std::move(b));
                    implicit = true;
                }
                effective = Section::Scenario;
            }
        }

        switch (effective) {
            case Section::Top:
                break;
            case Section::Run:
                if (key == "trials") {
                    spec.trials = ctx.integer(value);
                    if (spec.trials < 1) ctx.fail("must be at least 1");
                } else if (key == "seed") {
                    spec.seed = ctx.integer(value);
                } else if (key == "thresholds_db") {
                    spec.thresholds_db = parse_thresholds(ctx, value);
                } else if (key == "output") {
                    if (value.empty()) ctx.fail("must not be empty");
                    spec.output_path = std::string(value);
                } else {
                    ctx.fail("unknown key in [run]");
                }
                break;
            case Section::Channel: {
                const auto it = channel_keys().find(key);
                if (it == channel_keys().end()) ctx.fail("unknown key in [channel]");
                if (builders.empty()) {
                    it->second(base_channel, ctx, value);
                } else {
                    it->second(builders.back().cfg.channel, ctx, value);
                    builders.back().key_lines[key] = line_no;
                }
                break;
            }
            case Section::Scenario: {
                auto& b = builders.back();
                if (key == "preset") {
                    if (!b.key_lines.empty()) ctx.fail("preset must be the first key of its scenario");
                    const auto name = std::string(value);
                    ScenarioConfig p = ctx.enumerated([&](std::string_view v) { return preset(v); }, value);
                    const LosModel los = p.channel.los_model;
                    p.channel = base_channel;
                    if (name == "oracle") p.channel.los_model = los;
                    b.cfg = p;
                    b.prefix = name;
                } else {
                    const auto it = scenario_keys().find(key);
                    if (it == scenario_keys().end()) ctx.fail("unknown key in [scenario]");
                    it->second(b, ctx, value);
                }
                b.key_lines[key] = line_no;
                break;
            }
        }
    }

    if (builders.empty()) {
        ScenarioBuilder b;
        b.cfg.channel = base_channel;
        builders.push_back(std::move(b));
    }
    std::set<std::string> names;
    for (auto& b : builders) {
        spec.scenarios.push_back(finalize(b));
        if (!names.insert(spec.scenarios.back().name).second) {
            throw ParseError(b.header_line, "scenario", "duplicate scenario name '" + spec.scenarios.back().name + "'");
        }
    }
    validate(spec);
    return spec;
}

void validate(const RunSpec& spec) {
    if (spec.scenarios.empty()) throw ParseError(0, "scenario", "at least one scenario is required");
    if (spec.trials < 1) throw ParseError(0, "trials", "must be at least 1");
    if (spec.thresholds_db.empty()) throw ParseError(0, "thresholds_db", "must not be empty");
    for (std::size_t i = 1; i < spec.thresholds_db.size(); ++i) {
        if (!(spec.thresholds_db[i] > spec.thresholds_db[i - 1])) {
            throw ParseError(0, "thresholds_db", "thresholds must be strictly ascending");
        }
    }
    for (const auto& s : spec.scenarios) {
        try {
            s.validate();
        } catch (const InvalidParameter& e) {
            const std::string msg = e.what();
            throw ParseError(0, msg.substr(0, msg.find(' ')), "scenario '" + s.name + "': " + msg);
        }
    }
}

std::string render_config(const RunSpec& spec) {
    std::ostringstream out;
    out << "[run]\n";
    out << "trials = " << spec.trials << "\n";
    out << "seed = " << spec.seed << "\n";
    out << "thresholds_db = ";
    for (std::size_t i = 0; i < spec.thresholds_db.size(); ++i) {
        out << (i ? ", " : "") << fmt_double(spec.thresholds_db[i]);
    }
    out << "\n";
    out << "output = " << spec.output_path.string() << "\n";

    for (const auto& s : spec.scenarios) {
        out << "\n[scenario " << s.name << "]\n";
        out << "bs_kind = " << to_string(s.bs_kind) << "\n";
        out << "bs_density = " << fmt_double(s.bs_density) << "\n";
        out << "bs_altitude = " << fmt_double(s.bs_altitude) << "\n";
        out << "corridor_line_density = " << fmt_double(s.corridor_line_density) << "\n";
        out << "evtol_linear_density = " << fmt_double(s.evtol_linear_density) << "\n";
        out << "region_radius = " << fmt_double(s.region_radius) << "\n";
        out << "exclusion_radius = " << fmt_double(s.exclusion_radius) << "\n";
        out << "bs_tx_power = " << fmt_double(s.bs_tx_power) << "\n";
        out << "evtol_tx_power = " << fmt_double(s.evtol_tx_power) << "\n";
        out << "level_low_alt = " << fmt_double(s.level_low_alt) << "\n";
        out << "level_high_alt = " << fmt_double(s.level_high_alt) << "\n";
        out << "level = " << to_string(s.level) << "\n";
        out << "direction = " << to_string(s.direction) << "\n";
        out << "ul_interferers = " << to_string(s.ul_interferers) << "\n";
        out << "[channel]\n";
        out << "alpha_los = " << fmt_double(s.channel.alpha_los) << "\n";
        out << "alpha_nlos = " << fmt_double(s.channel.alpha_nlos) << "\n";
        out << "nakagami_m = " << fmt_double(s.channel.nakagami_m) << "\n";
        out << "sigmoid_a = " << fmt_double(s.channel.sigmoid_a) << "\n";
        out << "sigmoid_b = " << fmt_double(s.channel.sigmoid_b) << "\n";
        out << "ref_gain = " << fmt_double(s.channel.ref_gain) << "\n";
        out << "los_model = " << to_string(s.channel.los_model) << "\n";
    }
    return out.str();
}

}  // namespace uamcov
