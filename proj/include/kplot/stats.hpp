#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kplot/sample.hpp"

namespace kplot {

/// Kendall's tau-a by O(n^2) concordance counting; ties count as neither.
inline double kendall_tau(const BivariateSample& sample) {
    const auto n = sample.size();
    std::int64_t score = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = sample[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& b = sample[j];
            const double dx = a.x - b.x;
            const double dy = a.y - b.y;
            const int sx = (dx > 0) - (dx < 0);
            const int sy = (dy > 0) - (dy < 0);
            score += sx * sy;
        }
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(score) / pairs;
}

/// Sample Pearson correlation; 0 when either coordinate is constant.
inline double pearson_r(const BivariateSample& sample) {
    const double n = static_cast<double>(sample.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : sample) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (const auto& p : sample) {
        const double dx = p.x - mx;
        const double dy = p.y - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

/// Mean and (n - 1)-denominator standard deviation.
inline MeanSd mean_sd(std::span<const double> values) {
    MeanSd out;
    if (values.empty()) return out;
    // Deviations from the first value, so constant input gives sd == 0 exactly.
    const double shift = values.front();
    double sum = 0.0;
    for (double v : values) sum += v - shift;
    const double mean_dev = sum / static_cast<double>(values.size());
    out.mean = shift + mean_dev;
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - shift - mean_dev) * (v - shift - mean_dev);
    out.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return out;
}

}  // namespace kplot
