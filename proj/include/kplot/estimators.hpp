#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kplot/error.hpp"
#include "kplot/quadrant.hpp"
#include "kplot/sample.hpp"

namespace kplot {

/// u log u with the continuous extension 0 log 0 = 0.
inline double xlogx(double u) noexcept { return u > 0.0 ? u * std::log(u) : 0.0; }

/// Per-point AUK kernel 1 - u + u log u; kernel(0) = 1, kernel(1) = 0.
inline double auk_kernel(double u) noexcept { return 1.0 - u + xlogx(u); }

/// W(t) = t - t log t, the CDF of a product of two independent uniforms.
inline double w_transform(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("w_transform: t must lie in [0, 1]");
    return t - xlogx(t);
}

struct QuadrantProbs {
    double h0 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double h3 = 0.0;
    double f = 0.0;
    double g = 0.0;

    double at(Panel p) const noexcept {
        switch (p) {
            case Panel::lower_left: return h0;
            case Panel::lower_right: return h1;
            case Panel::upper_left: return h2;
            case Panel::upper_right: return h3;
        }
        return 0.0;
    }
};

inline QuadrantProbs to_probs(const QuadrantCounts& c, std::size_t n) noexcept {
    const double dn = static_cast<double>(n);
    return {c.h0 / dn, c.h1 / dn, c.h2 / dn, c.h3 / dn, c.f / dn, c.g / dn};
}

inline QuadrantProbs quadrant_probs(const BivariateSample& sample, std::size_t j) {
    return to_probs(quadrant_counts_at(sample, j), sample.size());
}

/// Quadrant counts for every point of a sample, computed once and shared by
/// all estimators.
class QuadrantTable {
public:
    explicit QuadrantTable(const BivariateSample& sample) : n_(sample.size()), counts_(quadrant_counts(sample)) {}
    QuadrantTable(std::size_t n, std::vector<QuadrantCounts> counts) : n_(n), counts_(std::move(counts)) {}

    std::size_t size() const noexcept { return n_; }
    const std::vector<QuadrantCounts>& counts() const noexcept { return counts_; }

    QuadrantProbs probs(std::size_t j) const {
        if (j >= n_) throw std::out_of_range("point index out of range");
        return to_probs(counts_[j], n_);
    }

    /// ĥ_panel(j) for every j, in sample order.
    std::vector<double> panel_values(Panel p) const {
        std::vector<double> v(n_);
        const double dn = static_cast<double>(n_);
        for (std::size_t j = 0; j < n_; ++j) v[j] = static_cast<double>(counts_[j].at(p)) / dn;
        return v;
    }

private:
    std::size_t n_;
    std::vector<QuadrantCounts> counts_;
};

namespace detail {

inline void check_probability(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument(std::string(what) + ": t must lie in [0, 1]");
}

}  // namespace detail

/// Empirical K_panel(t) = (1/n) #{j : ĥ_panel(j) < t}.
inline double kendall_cdf(const QuadrantTable& table, Panel panel, double t) {
    detail::check_probability(t, "kendall_cdf");
    const double dn = static_cast<double>(table.size());
    std::size_t below = 0;
    for (const auto& c : table.counts()) {
        if (static_cast<double>(c.at(panel)) / dn < t) ++below;
    }
    return static_cast<double>(below) / dn;
}

inline double kendall_cdf(const BivariateSample& sample, Panel panel, double t) {
    return kendall_cdf(QuadrantTable(sample), panel, t);
}

struct CurvePoint {
    double w;
    double k;
};

/// One panel of a multi-panel K-plot sampled on a grid of t values.
struct KendallCurve {
    Panel panel = Panel::lower_left;
    std::vector<double> grid;
    std::vector<CurvePoint> points;
};

/// t_i = i / (grid_size - 1), i = 0..grid_size-1.
inline std::vector<double> uniform_grid(std::size_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("grid size must be at least 2");
    std::vector<double> grid(grid_size);
    const double step = static_cast<double>(grid_size - 1);
    for (std::size_t i = 0; i < grid_size; ++i) grid[i] = static_cast<double>(i) / step;
    grid.back() = 1.0;
    return grid;
}

inline constexpr std::size_t kDefaultGridSize = 201;

inline KendallCurve kendall_curve(const QuadrantTable& table, Panel panel, std::size_t grid_size = kDefaultGridSize) {
    KendallCurve curve;
    curve.panel = panel;
    curve.grid = uniform_grid(grid_size);
    auto values = table.panel_values(panel);
    std::sort(values.begin(), values.end());
    const double dn = static_cast<double>(table.size());
    curve.points.reserve(grid_size);
    for (double t : curve.grid) {
        // Same comparison as kendall_cdf: count of values strictly below t.
        const auto below = std::lower_bound(values.begin(), values.end(), t) - values.begin();
        curve.points.push_back({w_transform(t), static_cast<double>(below) / dn});
    }
    return curve;
}

inline KendallCurve kendall_curve(const BivariateSample& sample, Panel panel, std::size_t grid_size = kDefaultGridSize) {
    return kendall_curve(QuadrantTable(sample), panel, grid_size);
}

inline std::array<KendallCurve, 4> kendall_curves(const QuadrantTable& table, std::size_t grid_size = kDefaultGridSize) {
    return {kendall_curve(table, Panel::lower_left, grid_size), kendall_curve(table, Panel::lower_right, grid_size),
            kendall_curve(table, Panel::upper_left, grid_size), kendall_curve(table, Panel::upper_right, grid_size)};
}

namespace detail {

/// (1/n) sum_j f(count_j / n), accumulated over distinct counts in ascending
/// order, so the result depends only on the multiset of counts.
template <class F>
double mean_over_counts(const QuadrantTable& table, Panel panel, F&& f) {
    const std::size_t n = table.size();
    std::vector<std::size_t> multiplicity(n + 1, 0);
    for (const auto& c : table.counts()) ++multiplicity[static_cast<std::size_t>(c.at(panel))];
    const double dn = static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t c = 0; c <= n; ++c) {
        if (multiplicity[c] != 0) sum += static_cast<double>(multiplicity[c]) * f(static_cast<double>(c) / dn);
    }
    return sum / dn;
}

}  // namespace detail

/// Plug-in AUK for one panel: (1/n) sum_j kernel(ĥ_panel(j)).
inline double auk_component(const QuadrantTable& table, Panel panel) {
    return detail::mean_over_counts(table, panel, auk_kernel);
}

inline double auk_component(const BivariateSample& sample, Panel panel) {
    return auk_component(QuadrantTable(sample), panel);
}

// -- indices ------------------------------------------------------------------

inline constexpr std::array<double, 6> kStandardizingCoefficients = {0.0, 2.070, 0.061, -2.471, 1.307, 0.033};

/// Polynomial approximation of the inverse normal-calibration curve, mapping
/// I_AUK to a scale on which bivariate-normal data read as |rho|.
/// Inputs above 1 are clamped to 1.
inline double standardized_index(double i_auk) {
    if (std::isnan(i_auk)) throw std::invalid_argument("standardized_index: I_AUK is NaN");
    const double t = std::clamp(i_auk, 0.0, 1.0);
    double acc = 0.0;
    for (auto it = kStandardizingCoefficients.rbegin(); it != kStandardizingCoefficients.rend(); ++it) acc = acc * t + *it;
    return acc;
}

/// sqrt(8/5) * ||D - (1/2, 1/2, 1/2, 1/2)||.
///
/// Squared deviations are summed in sorted order so the result is exactly
/// invariant under any permutation of the components.
inline double dependence_index(const std::array<double, 4>& auk) {
    std::array<double, 4> sq{};
    for (std::size_t i = 0; i < 4; ++i) sq[i] = (auk[i] - 0.5) * (auk[i] - 0.5);
    std::sort(sq.begin(), sq.end());
    double s = 0.0;
    for (double v : sq) s += v;
    return std::sqrt(8.0 / 5.0) * std::sqrt(s);
}

struct DVector {
    std::array<double, 4> auk{0.5, 0.5, 0.5, 0.5};
    double i_auk = 0.0;
    double i_auk_std = 0.0;

    static DVector from_components(const std::array<double, 4>& auk) {
        DVector d;
        d.auk = auk;
        d.i_auk = dependence_index(auk);
        d.i_auk_std = standardized_index(d.i_auk);
        return d;
    }

    double operator[](Panel p) const noexcept { return auk[static_cast<std::size_t>(index_of(p))]; }
};

inline DVector d_vector(const QuadrantTable& table) {
    std::array<double, 4> auk{};
    for (Panel p : kPanels) auk[static_cast<std::size_t>(index_of(p))] = auk_component(table, p);
    return DVector::from_components(auk);
}

inline DVector d_vector(const BivariateSample& sample) { return d_vector(QuadrantTable(sample)); }

/// 3 + (1/n) sum_j sum_i ĥ_i(j) log ĥ_i(j): the likelihood-style form of the
/// total AUK.
inline double total_auk_expansion(const QuadrantTable& table) {
    double sum = 0.0;
    for (Panel p : kPanels) sum += detail::mean_over_counts(table, p, xlogx);
    return 3.0 + sum;
}

inline constexpr double kTotalAukCrossCheckTolerance = 1e-12;

/// Sum of the four AUK components, cross-checked against the expansion form.
inline double total_auk(const QuadrantTable& table) {
    const auto d = d_vector(table);
    const double total = d.auk[0] + d.auk[1] + d.auk[2] + d.auk[3];
    const double expansion = total_auk_expansion(table);
    if (!(std::abs(total - expansion) <= kTotalAukCrossCheckTolerance)) {
        throw ComputationError("total AUK cross-check failed: component sum " + format_double(total) +
                               " vs expansion " + format_double(expansion));
    }
    return total;
}

inline double total_auk(const BivariateSample& sample) { return total_auk(QuadrantTable(sample)); }

// -- dependence direction -------------------------------------------------------

enum class DependenceSign { negative, neutral, positive };

inline std::string_view to_string(DependenceSign s) noexcept {
    switch (s) {
        case DependenceSign::negative: return "negative";
        case DependenceSign::neutral: return "neutral";
        case DependenceSign::positive: return "positive";
    }
    return "neutral";
}

struct DependenceSigns {
    /// Positive-dependence signed quantities:
    /// 1/2 - AUK0, AUK1 - 1/2, AUK2 - 1/2, 1/2 - AUK3.
    std::array<double, 4> signed_quantity{};
    std::array<DependenceSign, 4> component{DependenceSign::neutral, DependenceSign::neutral, DependenceSign::neutral,
                                            DependenceSign::neutral};
    DependenceSign aggregate = DependenceSign::neutral;
    double tolerance = 0.0;
};

/// Rough standard-error scale used as the default neutrality band.
inline double default_neutrality_tolerance(std::size_t n) { return 2.0 / std::sqrt(static_cast<double>(n)); }

inline DependenceSigns classify_dependence(const DVector& d, double tolerance) {
    if (!(tolerance >= 0.0)) throw std::invalid_argument("classify_dependence: tolerance must be >= 0");
    DependenceSigns out;
    out.tolerance = tolerance;
    out.signed_quantity = {0.5 - d.auk[0], d.auk[1] - 0.5, d.auk[2] - 0.5, 0.5 - d.auk[3]};
    std::array<int, 3> votes{};
    for (std::size_t i = 0; i < 4; ++i) {
        const double s = out.signed_quantity[i];
        out.component[i] = s > tolerance ? DependenceSign::positive
                           : s < -tolerance ? DependenceSign::negative
                                            : DependenceSign::neutral;
        ++votes[static_cast<std::size_t>(out.component[i])];
    }
    const int top = *std::max_element(votes.begin(), votes.end());
    const auto winners = std::count(votes.begin(), votes.end(), top);
    out.aggregate = winners == 1
                        ? static_cast<DependenceSign>(std::max_element(votes.begin(), votes.end()) - votes.begin())
                        : DependenceSign::neutral;
    return out;
}

// -- condition C1 -------------------------------------------------------------

/// True iff the curve stays on one side of the diagonal k = w (up to tolerance).
inline bool is_one_sided(const KendallCurve& curve, double tolerance) {
    bool above = true;
    bool below = true;
    for (const auto& p : curve.points) {
        const double diff = p.k - p.w;
        if (diff < -tolerance) above = false;
        if (diff > tolerance) below = false;
    }
    return above || below;
}

/// Panels whose empirical K-plot does not cross the diagonal.
inline std::vector<Panel> check_c1(const QuadrantTable& table, std::size_t grid_size, double tolerance) {
    if (!(tolerance >= 0.0)) throw std::invalid_argument("check_c1: tolerance must be >= 0");
    std::vector<Panel> out;
    for (Panel p : kPanels) {
        if (is_one_sided(kendall_curve(table, p, grid_size), tolerance)) out.push_back(p);
    }
    return out;
}

inline std::vector<Panel> check_c1(const BivariateSample& sample, std::size_t grid_size, double tolerance) {
    return check_c1(QuadrantTable(sample), grid_size, tolerance);
}

}  // namespace kplot
