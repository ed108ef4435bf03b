#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "uamcov/config.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <unistd.h>
#endif

namespace uamcov {

namespace {

std::string g6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

long process_id() {
#if defined(__unix__) || defined(__APPLE__)
    return static_cast<long>(::getpid());
#else
    return 0;
#endif
}

}  // namespace

std::string render_csv(const std::vector<CoverageCurve>& curves) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& c : curves) {
        const auto& s = c.scenario;
        for (std::size_t i = 0; i < c.thresholds_db.size(); ++i) {
            out << s.name << ',' << to_string(s.bs_kind) << ',' << to_string(s.direction) << ','
                << to_string(s.level) << ',' << g6(c.thresholds_db[i]) << ',' << g6(c.pcov[i]) << ','
                << g6(c.ci_low[i]) << ',' << g6(c.ci_high[i]) << ',' << c.trials << ',' << c.seed << '\n';
        }
    }
    return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(process_id());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        f.flush();
        if (!f) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw std::runtime_error("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

std::vector<CoverageCurve> run(const RunSpec& spec, RunOptions options) {
    validate(spec);
    std::vector<CoverageCurve> curves;
    curves.reserve(spec.scenarios.size());
    for (const auto& s : spec.scenarios) {
        curves.push_back(estimate_coverage(s, spec.thresholds_db, spec.trials, spec.seed, {options.workers}));
    }
    write_file_atomic(spec.output_path, render_csv(curves));
    return curves;
}

ReliabilityResult check_reliability(const CoverageCurve& curve, const ReliabilityTarget& target) {
    if (!(target.target > 0.0 && target.target < 1.0)) {
        throw InvalidParameter("reliability target must lie in (0, 1)");
    }
    const auto& th = curve.thresholds_db;
    if (th.empty() || th.size() != curve.pcov.size()) throw InvalidParameter("malformed coverage curve");
    const double q = target.threshold_db;
    if (!(q >= th.front() && q <= th.back())) {
        throw OutOfRange("threshold " + g6(q) + " dB lies outside the curve grid [" + g6(th.front()) + ", " +
                         g6(th.back()) + "] dB");
    }

    double p = 0.0;
    const auto hi = std::lower_bound(th.begin(), th.end(), q);
    const auto j = static_cast<std::size_t>(hi - th.begin());
    if (*hi == q) {
        p = curve.pcov[j];
    } else {
        const std::size_t i = j - 1;
        const double w = (q - th[i]) / (th[j] - th[i]);
        p = curve.pcov[i] + w * (curve.pcov[j] - curve.pcov[i]);
    }
    return {p >= target.target, p, p - target.target};
}

}  // namespace uamcov
