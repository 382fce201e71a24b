#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kplot/sample.hpp"

namespace kplot {

/// The four quadrant orientations around a sample point (x_j, y_j).
///
///   lower_left   (X <  x_j, Y <  y_j)   H0 = H
///   lower_right  (X >= x_j, Y <  y_j)   H1
///   upper_left   (X <  x_j, Y >= y_j)   H2
///   upper_right  (X >= x_j, Y >= y_j)   H3
enum class Panel : int { lower_left = 0, lower_right = 1, upper_left = 2, upper_right = 3 };

inline constexpr Panel kPanels[4] = {Panel::lower_left, Panel::lower_right, Panel::upper_left, Panel::upper_right};

inline Panel panel_from_index(int index) {
    if (index < 0 || index > 3) throw std::out_of_range("panel index must be in 0..3, got " + std::to_string(index));
    return static_cast<Panel>(index);
}

constexpr int index_of(Panel p) noexcept { return static_cast<int>(p); }

/// Integer quadrant counts for one sample point. Counting conventions:
/// h0 = #{X_k < X_j, Y_k < Y_j}, f = #{X_k < X_j}, g = #{Y_k < Y_j},
/// h1 = g - h0, h2 = f - h0, h3 = n - f - g + h0. The point itself lands in h3.
struct QuadrantCounts {
    std::int64_t h0 = 0;
    std::int64_t h1 = 0;
    std::int64_t h2 = 0;
    std::int64_t h3 = 0;
    std::int64_t f = 0;
    std::int64_t g = 0;

    std::int64_t at(Panel p) const noexcept {
        switch (p) {
            case Panel::lower_left: return h0;
            case Panel::lower_right: return h1;
            case Panel::upper_left: return h2;
            case Panel::upper_right: return h3;
        }
        return 0;
    }

    friend bool operator==(const QuadrantCounts&, const QuadrantCounts&) = default;
};

namespace detail {

inline QuadrantCounts from_dominance(std::int64_t n, std::int64_t h0, std::int64_t f, std::int64_t g) {
    return {h0, g - h0, f - h0, n - f - g + h0, f, g};
}

/// Fenwick tree over 1-based ranks.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
    void add(std::size_t rank) {
        for (; rank < tree_.size(); rank += rank & (~rank + 1)) ++tree_[rank];
    }
    /// Number of inserted items with rank <= r.
    std::int64_t prefix(std::size_t rank) const {
        std::int64_t s = 0;
        for (; rank > 0; rank -= rank & (~rank + 1)) s += tree_[rank];
        return s;
    }

private:
    std::vector<std::int64_t> tree_;
};

/// Dense 1-based ranks; equal values share a rank.
inline std::vector<std::size_t> dense_ranks(std::span<const double> values, std::size_t* distinct = nullptr) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        ranks[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin()) + 1;
    }
    if (distinct) *distinct = sorted.size();
    return ranks;
}

}  // namespace detail

/// Counts of reference points strictly below-left of each query point:
/// out[q] = #{r : ref_x[r] < query_x[q] and ref_y[r] < query_y[q]}.
/// O((R + Q) log(R + Q)); handles ties exactly.
inline std::vector<std::int64_t> dominance_counts(std::span<const double> ref_x, std::span<const double> ref_y,
                                                  std::span<const double> query_x, std::span<const double> query_y) {
    const std::size_t nr = ref_x.size();
    const std::size_t nq = query_x.size();
    std::vector<double> all_y(ref_y.begin(), ref_y.end());
    all_y.insert(all_y.end(), query_y.begin(), query_y.end());
    std::size_t distinct = 0;
    const auto yrank = detail::dense_ranks(all_y, &distinct);

    // Events sorted by x; at equal x, queries come before insertions so that
    // only strictly smaller x values are counted.
    struct Event {
        double x;
        bool is_query;
        std::size_t id;
    };
    std::vector<Event> events;
    events.reserve(nr + nq);
    for (std::size_t r = 0; r < nr; ++r) events.push_back({ref_x[r], false, r});
    for (std::size_t q = 0; q < nq; ++q) events.push_back({query_x[q], true, q});
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.is_query != b.is_query) return a.is_query;
        return a.id < b.id;
    });

    detail::Fenwick tree(distinct);
    std::vector<std::int64_t> out(nq, 0);
    for (const auto& e : events) {
        if (e.is_query) {
            out[e.id] = tree.prefix(yrank[nr + e.id] - 1);
        } else {
            tree.add(yrank[e.id]);
        }
    }
    return out;
}

/// Quadrant counts at one point by direct enumeration, O(n).
inline QuadrantCounts quadrant_counts_at(const BivariateSample& sample, std::size_t j) {
    if (j >= sample.size()) {
        throw std::out_of_range("point index " + std::to_string(j) + " out of range for sample of size " +
                                std::to_string(sample.size()));
    }
    const auto& pj = sample[j];
    QuadrantCounts c;
    for (const auto& pk : sample) {
        const bool left = pk.x < pj.x;
        const bool below = pk.y < pj.y;
        if (left && below) ++c.h0;
        else if (!left && below) ++c.h1;
        else if (left && !below) ++c.h2;
        else ++c.h3;
        if (left) ++c.f;
        if (below) ++c.g;
    }
    return c;
}

/// Reference O(n^2) quadrant counts for every point.
inline std::vector<QuadrantCounts> quadrant_counts_naive(const BivariateSample& sample) {
    std::vector<QuadrantCounts> out(sample.size());
    for (std::size_t j = 0; j < sample.size(); ++j) out[j] = quadrant_counts_at(sample, j);
    return out;
}

/// Quadrant counts for every point in O(n log n); identical to the naive path.
inline std::vector<QuadrantCounts> quadrant_counts(const BivariateSample& sample) {
    const auto xs = sample.xs();
    const auto ys = sample.ys();
    const auto n = static_cast<std::int64_t>(sample.size());
    const auto h0 = dominance_counts(xs, ys, xs, ys);

    auto strictly_less = [](const std::vector<double>& v) {
        std::vector<double> sorted(v);
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::int64_t> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] = std::lower_bound(sorted.begin(), sorted.end(), v[i]) - sorted.begin();
        }
        return out;
    };
    const auto f = strictly_less(xs);
    const auto g = strictly_less(ys);

    std::vector<QuadrantCounts> out(sample.size());
    for (std::size_t j = 0; j < sample.size(); ++j) out[j] = detail::from_dominance(n, h0[j], f[j], g[j]);
    return out;
}

}  // namespace kplot
