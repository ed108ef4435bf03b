// Test-only reference computations. Nothing here calls into the library's
// estimation paths, so these stay independent of what they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// rho(T, alpha) = T^(2/alpha) * integral_{T^(-2/alpha)}^inf du / (1 + u^(alpha/2)),
/// evaluated numerically after mapping [lo, inf) onto (0, 1] via u = lo / s.
inline double rho_numeric(double t_lin, double alpha) {
    const double lo = std::pow(t_lin, -2.0 / alpha);
    // (lo / s^2) / (1 + (lo / s)^(alpha/2)), rearranged to stay finite at s = 0 for alpha >= 4.
    const double k = alpha / 2.0;
    auto g = [&](double s) { return lo * std::pow(s, k - 2.0) / (std::pow(s, k) + std::pow(lo, k)); };
    return std::pow(t_lin, 2.0 / alpha) * simpson(g, 0.0, 1.0, 200000);
}

inline double coverage_numeric(double t_lin) { return 1.0 / (1.0 + rho_numeric(t_lin, 4.0)); }

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

/// Asymptotic two-sample KS critical value at significance level alpha.
inline double ks_critical(double alpha, std::size_t n, std::size_t m) {
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

inline double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace oracle
