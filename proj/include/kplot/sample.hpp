#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kplot/error.hpp"

namespace kplot {

struct ObservationPair {
    double x;
    double y;

    friend bool operator==(const ObservationPair&, const ObservationPair&) = default;
};

/// Number of unordered pairs of observations sharing an x value (resp. y value).
struct TieReport {
    std::size_t x_tie_count = 0;
    std::size_t y_tie_count = 0;

    bool any() const noexcept { return x_tie_count > 0 || y_tie_count > 0; }
    friend bool operator==(const TieReport&, const TieReport&) = default;
};

namespace detail {

inline std::size_t count_duplicate_pairs(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t total = 0;
    for (std::size_t i = 0; i < values.size();) {
        std::size_t j = i + 1;
        while (j < values.size() && values[j] == values[i]) ++j;
        const std::size_t m = j - i;
        total += m * (m - 1) / 2;
        i = j;
    }
    return total;
}

}  // namespace detail

/// A validated sample of at least two finite (x, y) observations.
///
/// Immutable once constructed. Ties are allowed; they are detected at
/// construction and exposed through tie_report() so callers can warn.
class BivariateSample {
public:
    explicit BivariateSample(std::vector<ObservationPair> pairs) : pairs_(std::move(pairs)) {
        if (pairs_.size() < 2) {
            throw InputError("a bivariate sample needs at least 2 observations, got " +
                             std::to_string(pairs_.size()));
        }
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (!std::isfinite(pairs_[i].x) || !std::isfinite(pairs_[i].y)) {
                throw InputError("observation " + std::to_string(i + 1) + " is not finite");
            }
        }
        std::vector<double> xs(pairs_.size());
        std::vector<double> ys(pairs_.size());
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            xs[i] = pairs_[i].x;
            ys[i] = pairs_[i].y;
        }
        ties_.x_tie_count = detail::count_duplicate_pairs(std::move(xs));
        ties_.y_tie_count = detail::count_duplicate_pairs(std::move(ys));
    }

    static BivariateSample from_columns(std::span<const double> xs, std::span<const double> ys) {
        if (xs.size() != ys.size()) throw InputError("x and y columns differ in length");
        std::vector<ObservationPair> pairs(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) pairs[i] = {xs[i], ys[i]};
        return BivariateSample(std::move(pairs));
    }

    std::size_t size() const noexcept { return pairs_.size(); }
    const ObservationPair& operator[](std::size_t i) const { return pairs_[i]; }
    std::span<const ObservationPair> pairs() const noexcept { return pairs_; }
    auto begin() const noexcept { return pairs_.begin(); }
    auto end() const noexcept { return pairs_.end(); }

    std::vector<double> xs() const {
        std::vector<double> out(pairs_.size());
        std::transform(pairs_.begin(), pairs_.end(), out.begin(), [](const auto& p) { return p.x; });
        return out;
    }
    std::vector<double> ys() const {
        std::vector<double> out(pairs_.size());
        std::transform(pairs_.begin(), pairs_.end(), out.begin(), [](const auto& p) { return p.y; });
        return out;
    }

    const TieReport& tie_report() const noexcept { return ties_; }
    bool has_ties() const noexcept { return ties_.any(); }

private:
    std::vector<ObservationPair> pairs_;
    TieReport ties_;
};

inline TieReport detect_ties(const BivariateSample& sample) { return sample.tie_report(); }

/// Applies f to every x and g to every y.
template <class FX, class FY>
BivariateSample transform(const BivariateSample& sample, FX f, FY g) {
    std::vector<ObservationPair> out;
    out.reserve(sample.size());
    for (const auto& p : sample) out.push_back({static_cast<double>(f(p.x)), static_cast<double>(g(p.y))});
    return BivariateSample(std::move(out));
}

inline BivariateSample swap_axes(const BivariateSample& sample) {
    std::vector<ObservationPair> out;
    out.reserve(sample.size());
    for (const auto& p : sample) out.push_back({p.y, p.x});
    return BivariateSample(std::move(out));
}

// ---------------------------------------------------------------------------
// CSV dialect: comma delimiter, '.' decimal point, optional single header row.

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_cell(std::string_view cell, std::size_t row, std::size_t column) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (cell.empty() || ec != std::errc() || ptr != last) {
        throw CsvParseError(row, column, "cannot parse '" + std::string(cell) + "' as a number");
    }
    if (!std::isfinite(value)) throw CsvParseError(row, column, "value is not finite");
    return value;
}

}  // namespace detail

/// Reads columns x_col and y_col (1-based) from a CSV stream.
inline BivariateSample read_csv(std::istream& in, bool has_header, std::size_t x_col = 1, std::size_t y_col = 2) {
    if (x_col == 0 || y_col == 0) throw InputError("CSV column indices are 1-based");
    std::vector<ObservationPair> pairs;
    std::string line;
    std::size_t row = 0;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = detail::split_fields(line);
        const auto need = std::max(x_col, y_col);
        if (fields.size() < need) {
            throw CsvParseError(row, fields.size() + 1, "row has only " + std::to_string(fields.size()) + " columns");
        }
        const double x = detail::parse_cell(fields[x_col - 1], row, x_col);
        const double y = detail::parse_cell(fields[y_col - 1], row, y_col);
        pairs.push_back({x, y});
    }
    if (pairs.size() < 2) {
        throw InputError("CSV input has " + std::to_string(pairs.size()) + " data rows; at least 2 are required");
    }
    return BivariateSample(std::move(pairs));
}

inline BivariateSample load_csv(const std::string& path, bool has_header, std::size_t x_col = 1,
                                std::size_t y_col = 2) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    return read_csv(in, has_header, x_col, y_col);
}

/// Shortest text that parses back to exactly the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline void write_csv(std::ostream& out, const BivariateSample& sample, bool header = true) {
    if (header) out << "x,y\n";
    for (const auto& p : sample) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

inline void save_csv(const std::string& path, const BivariateSample& sample, bool header = true) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open output file '" + path + "'");
    write_csv(out, sample, header);
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace kplot
