#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kplot/error.hpp"
#include "kplot/estimators.hpp"
#include "kplot/random.hpp"
#include "kplot/sample.hpp"

namespace kplot {

enum class Statistic { auk0, auk1, auk2, auk3, i_auk, i_auk_std };

inline constexpr std::array<Statistic, 6> kAllStatistics = {Statistic::auk0, Statistic::auk1, Statistic::auk2,
                                                            Statistic::auk3, Statistic::i_auk, Statistic::i_auk_std};

inline std::string_view to_string(Statistic s) noexcept {
    switch (s) {
        case Statistic::auk0: return "auk0";
        case Statistic::auk1: return "auk1";
        case Statistic::auk2: return "auk2";
        case Statistic::auk3: return "auk3";
        case Statistic::i_auk: return "i_auk";
        case Statistic::i_auk_std: return "i_auk_std";
    }
    return "";
}

inline Statistic statistic_from_string(std::string_view name) {
    for (auto s : kAllStatistics) {
        if (to_string(s) == name) return s;
    }
    throw InputError("unknown statistic '" + std::string(name) + "'");
}

inline double evaluate(Statistic s, const DVector& d) noexcept {
    switch (s) {
        case Statistic::auk0: return d.auk[0];
        case Statistic::auk1: return d.auk[1];
        case Statistic::auk2: return d.auk[2];
        case Statistic::auk3: return d.auk[3];
        case Statistic::i_auk: return d.i_auk;
        case Statistic::i_auk_std: return d.i_auk_std;
    }
    return 0.0;
}

struct Interval {
    double level = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct IntervalEstimate {
    Statistic statistic = Statistic::i_auk;
    double point = 0.0;
    std::size_t replicates = 0;
    std::vector<Interval> intervals;
};

inline constexpr std::size_t kMinBootstrapReplicates = 100;

/// One-based order statistic s(ceil(q b)) of sorted replicates. The 1e-9
/// guard keeps products such as 0.05 * 5000 = 250.00000000000003 at 250.
inline double percentile(std::span<const double> sorted, double q) {
    const auto b = static_cast<double>(sorted.size());
    auto k = static_cast<std::size_t>(std::ceil(q * b - 1e-9));
    k = std::clamp<std::size_t>(k, 1, sorted.size());
    return sorted[k - 1];
}

namespace detail {

inline void check_bootstrap_args(std::size_t b, std::span<const double> levels) {
    if (b < kMinBootstrapReplicates) {
        throw InputError("bootstrap needs at least " + std::to_string(kMinBootstrapReplicates) + " replicates");
    }
    for (double l : levels) {
        if (!(l > 0.0 && l < 1.0)) throw InputError("confidence levels must lie in (0, 1)");
    }
}

inline IntervalEstimate summarize(Statistic s, double point, std::vector<double> replicates,
                                  std::span<const double> levels) {
    std::sort(replicates.begin(), replicates.end());
    IntervalEstimate est;
    est.statistic = s;
    est.point = point;
    est.replicates = replicates.size();
    for (double l : levels) {
        est.intervals.push_back({l, percentile(replicates, (1.0 - l) / 2.0), percentile(replicates, (1.0 + l) / 2.0)});
    }
    return est;
}

}  // namespace detail

/// Draws b with-replacement resamples of whole (x, y) pairs and returns the
/// D-vector of each. Replicate r uses sub-stream derive_seed(seed, r).
inline std::vector<DVector> bootstrap_replicates(const BivariateSample& sample, std::size_t b, std::uint64_t seed) {
    const auto n = sample.size();
    std::vector<DVector> out;
    out.reserve(b);
    std::vector<ObservationPair> resample(n);
    for (std::size_t r = 0; r < b; ++r) {
        Rng rng(derive_seed(seed, r));
        for (auto& p : resample) p = sample[rng.index(n)];
        out.push_back(d_vector(BivariateSample(resample)));
    }
    return out;
}

/// Percentile-bootstrap intervals for all six statistics from one replicate set.
inline std::vector<IntervalEstimate> bootstrap_all(const BivariateSample& sample, std::size_t b,
                                                   std::span<const double> levels, std::uint64_t seed) {
    detail::check_bootstrap_args(b, levels);
    const auto point = d_vector(sample);
    const auto reps = bootstrap_replicates(sample, b, seed);
    std::vector<IntervalEstimate> out;
    for (auto s : kAllStatistics) {
        std::vector<double> values(reps.size());
        for (std::size_t r = 0; r < reps.size(); ++r) values[r] = evaluate(s, reps[r]);
        out.push_back(detail::summarize(s, evaluate(s, point), std::move(values), levels));
    }
    return out;
}

/// Percentile-bootstrap intervals for one statistic. Uses the same replicate
/// stream as bootstrap_all, so both agree for equal seeds.
inline IntervalEstimate bootstrap_ci(const BivariateSample& sample, Statistic statistic, std::size_t b,
                                     std::span<const double> levels, std::uint64_t seed) {
    detail::check_bootstrap_args(b, levels);
    const auto reps = bootstrap_replicates(sample, b, seed);
    std::vector<double> values(reps.size());
    for (std::size_t r = 0; r < reps.size(); ++r) values[r] = evaluate(statistic, reps[r]);
    return detail::summarize(statistic, evaluate(statistic, d_vector(sample)), std::move(values), levels);
}

inline IntervalEstimate bootstrap_ci(const BivariateSample& sample, std::string_view statistic, std::size_t b,
                                     std::span<const double> levels, std::uint64_t seed) {
    return bootstrap_ci(sample, statistic_from_string(statistic), b, levels, seed);
}

}  // namespace kplot
