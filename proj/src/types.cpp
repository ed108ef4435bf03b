#include "uamcov/types.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <mutex>

namespace uamcov {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(BsKind k) {
    switch (k) {
        case BsKind::CT: return "ct";
        case BsKind::UAV: return "uav";
        case BsKind::NTFP: return "ntfp";
    }
    return "?";
}

std::string_view to_string(Level l) { return l == Level::LC ? "lc" : "hc"; }

std::string_view to_string(Direction d) { return d == Direction::DL ? "dl" : "ul"; }

BsKind parse_bs_kind(std::string_view s) {
    const auto v = lower(s);
    if (v == "ct") return BsKind::CT;
    if (v == "uav") return BsKind::UAV;
    if (v == "ntfp") return BsKind::NTFP;
    throw InvalidParameter("unknown base-station kind '" + std::string(s) + "'");
}

Level parse_level(std::string_view s) {
    const auto v = lower(s);
    if (v == "lc") return Level::LC;
    if (v == "hc") return Level::HC;
    throw InvalidParameter("unknown corridor level '" + std::string(s) + "'");
}

Direction parse_direction(std::string_view s) {
    const auto v = lower(s);
    if (v == "dl") return Direction::DL;
    if (v == "ul") return Direction::UL;
    throw InvalidParameter("unknown link direction '" + std::string(s) + "'");
}

void log_warning(std::string_view message) {
    static std::mutex mu;
    std::lock_guard lock(mu);
    std::cerr << "warning: " << message << '\n';
}

}  // namespace uamcov
