#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace tgg {

// Wilson score interval for a binomial proportion, 95% by default.
struct WilsonCi {
    double lo, hi;
};

inline WilsonCi wilson_ci(uint64_t successes, uint64_t trials, double z = 1.959963984540054) {
    if (trials == 0) throw std::invalid_argument("wilson_ci: trials == 0");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // the exact interval ends coincide with p at the boundary counts; keep
    // rounding noise from pushing lo above 0 or hi below 1 there
    double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

// log C(n, k) via lgamma; exact enough for n up to astronomic sizes.
inline double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log of the falling factorial n (n-1) ... (n-k+1).
inline double log_falling_factorial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0);
}

// Shortest-round-trip decimal for doubles: 17 significant digits.
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace tgg
