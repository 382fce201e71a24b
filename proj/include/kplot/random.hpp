#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace kplot {

/// splitmix64 finalizer; used to derive independent sub-stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for sub-stream `index` of `seed`. Replication r of a study always
/// draws from derive_seed(seed, r), so results do not depend on the order
/// or thread on which replications are evaluated.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Seeded generator with platform-independent output.
///
/// std::mt19937_64 is bit-exact by the standard; the std distributions are
/// not, so the transforms below are written out: uniforms take the top 53
/// bits, normals use Box-Muller on pairs of uniforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1).
    double uniform_open() noexcept { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform index in [0, n) by multiply-shift on 64 random bits.
    std::uint64_t index(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double sd) noexcept { return mean + sd * normal(); }

    /// Chi-square with an integer number of degrees of freedom.
    double chi_square(int dof) noexcept {
        double s = 0.0;
        for (int i = 0; i < dof; ++i) {
            const double z = normal();
            s += z * z;
        }
        return s;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace kplot
