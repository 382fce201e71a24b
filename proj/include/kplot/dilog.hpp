#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kplot {

namespace detail {

/// Li2(z) = sum z^k / k^2 for 0 <= z <= 1/2; the ratio bound 1/2 gives
/// full double precision in under 60 terms.
inline double dilog_series(double z) noexcept {
    double term = z;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double add = term / (static_cast<double>(k) * k);
        sum += add;
        if (add < 1e-18 * sum) break;
        term *= z;
    }
    return sum;
}

/// Real dilogarithm on [0, 1].
inline double dilog_unit(double z) noexcept {
    constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    if (z == 0.0) return 0.0;
    if (z == 1.0) return zeta2;
    if (z <= 0.5) return dilog_series(z);
    // Reflection: Li2(z) + Li2(1 - z) = pi^2/6 - log z log(1 - z).
    return zeta2 - std::log(z) * std::log1p(-z) - dilog_series(1.0 - z);
}

}  // namespace detail

/// Real part of the dilogarithm Li2(z) for 0 < z <= 2.
///
/// Above 1 the principal branch is complex; its real part follows from the
/// inversion identity Re Li2(z) = pi^2/3 - (1/2) log^2 z - Li2(1/z).
inline double dilog_real(double z) {
    if (!(z > 0.0 && z <= 2.0)) throw std::invalid_argument("dilog_real: z must lie in (0, 2]");
    if (z <= 1.0) return detail::dilog_unit(z);
    const double lz = std::log(z);
    return std::numbers::pi * std::numbers::pi / 3.0 - 0.5 * lz * lz - detail::dilog_unit(1.0 / z);
}

}  // namespace kplot
