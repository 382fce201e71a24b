#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "kplot/kplot.hpp"

namespace kplot::testing {

inline BivariateSample pairs(std::initializer_list<std::pair<double, double>> xy) {
    std::vector<ObservationPair> v;
    for (auto [x, y] : xy) v.push_back({x, y});
    return BivariateSample(std::move(v));
}

/// Continuous sample with a mild positive dependence; no ties with probability one.
inline BivariateSample random_sample(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ObservationPair> v(n);
    for (auto& p : v) {
        p.x = rng.normal();
        p.y = 0.4 * p.x + rng.normal();
    }
    return BivariateSample(std::move(v));
}

/// Kolmogorov-Smirnov sup distance between the empirical CDF of v and cdf.
inline double ks_distance(std::vector<double> v, const std::function<double(double)>& cdf) {
    std::sort(v.begin(), v.end());
    const auto n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
    }
    return d;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double uniform_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("kplot_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace kplot::testing
