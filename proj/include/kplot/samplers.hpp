#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kplot/error.hpp"
#include "kplot/random.hpp"
#include "kplot/sample.hpp"

namespace kplot {

enum class SamplerFamily { bvn, fgm, morgenstern, plackett, bvt5, noise_ratio, triangle, circle };

inline std::string_view to_string(SamplerFamily f) noexcept {
    switch (f) {
        case SamplerFamily::bvn: return "bvn";
        case SamplerFamily::fgm: return "fgm";
        case SamplerFamily::morgenstern: return "morgenstern";
        case SamplerFamily::plackett: return "plackett";
        case SamplerFamily::bvt5: return "bvt5";
        case SamplerFamily::noise_ratio: return "noise_ratio";
        case SamplerFamily::triangle: return "triangle";
        case SamplerFamily::circle: return "circle";
    }
    return "";
}

inline SamplerFamily sampler_family_from_string(std::string_view name) {
    for (auto f : {SamplerFamily::bvn, SamplerFamily::fgm, SamplerFamily::morgenstern, SamplerFamily::plackett,
                   SamplerFamily::bvt5, SamplerFamily::noise_ratio, SamplerFamily::triangle, SamplerFamily::circle}) {
        if (to_string(f) == name) return f;
    }
    throw InputError("unknown sampler family '" + std::string(name) + "'");
}

/// Whether the family takes a parameter (rho, gamma, alpha or psi).
constexpr bool takes_parameter(SamplerFamily f) noexcept {
    return f == SamplerFamily::bvn || f == SamplerFamily::fgm || f == SamplerFamily::morgenstern ||
           f == SamplerFamily::plackett;
}

/// Which Plackett conditional-inversion formula to use.
///
/// `printed` multiplies by W2 and reproduces the published simulation
/// tables (its Y is not confined to [0, 1]); `textbook` divides by 2 W2 and
/// gives the exact Plackett copula.
enum class PlackettVariant { printed, textbook };

struct SamplerSpec {
    SamplerFamily family = SamplerFamily::bvn;
    double param = 0.0;
    std::size_t n = 2;
    std::uint64_t seed = 1;
    PlackettVariant plackett_variant = PlackettVariant::printed;

    void validate() const {
        if (n < 2) throw InputError("sample size must be at least 2");
        switch (family) {
            case SamplerFamily::bvn:
                if (!(std::abs(param) <= 1.0)) throw InputError("bvn: need |rho| <= 1");
                break;
            case SamplerFamily::fgm:
                if (!(std::abs(param) < 1.0)) throw InputError("fgm: need |gamma| < 1");
                break;
            case SamplerFamily::morgenstern:
                if (!(param > 0.0)) throw InputError("morgenstern: need alpha > 0");
                break;
            case SamplerFamily::plackett:
                if (!(param > 0.0)) throw InputError("plackett: need psi > 0");
                break;
            default: break;
        }
    }
};

/// (X, rho X + sqrt(1 - rho^2) xi) with X, xi independent standard normal.
inline BivariateSample sample_bvn(double rho, std::size_t n, std::uint64_t seed) {
    if (!(std::abs(rho) <= 1.0)) throw InputError("bvn: need |rho| <= 1");
    Rng rng(seed);
    const double s = std::sqrt(1.0 - rho * rho);
    std::vector<ObservationPair> pairs(n);
    for (auto& p : pairs) {
        p.x = rng.normal();
        const double xi = rng.normal();
        p.y = rho == 1.0 ? p.x : rho == -1.0 ? -p.x : rho * p.x + s * xi;
    }
    return BivariateSample(std::move(pairs));
}

/// FGM copula sample by conditional inversion: given V = v, U solves
/// u + a u (1 - u) = p with a = gamma (1 - 2v).
inline BivariateSample sample_fgm(double gamma, std::size_t n, std::uint64_t seed) {
    if (!(std::abs(gamma) < 1.0)) throw InputError("fgm: need |gamma| < 1");
    Rng rng(seed);
    std::vector<ObservationPair> pairs(n);
    for (auto& pr : pairs) {
        const double v = rng.uniform();
        const double p = rng.uniform();
        const double a = gamma * (1.0 - 2.0 * v);
        double u = p;
        if (std::abs(a) > 1e-12) {
            // Root of a u^2 - (1 + a) u + p = 0 in [0, 1], written in the
            // cancellation-free form 2p / ((1 + a) + sqrt((1 + a)^2 - 4 a p)).
            const double b = 1.0 + a;
            u = 2.0 * p / (b + std::sqrt(b * b - 4.0 * a * p));
        }
        pr = {v, u};
    }
    return BivariateSample(std::move(pairs));
}

inline BivariateSample sample_morgenstern(double alpha, std::size_t n, std::uint64_t seed) {
    if (!(alpha > 0.0)) throw InputError("morgenstern: need alpha > 0");
    Rng rng(seed);
    std::vector<ObservationPair> pairs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform();
        const double u = rng.uniform();
        const double s = 2.0 * x - 1.0;
        const double z = alpha * s - 1.0;
        const double w = 1.0 - 2.0 * alpha * s + alpha * alpha * s * s + 4.0 * alpha * u * s;
        if (w < 0.0) {
            throw ComputationError("morgenstern: W < 0 at draw " + std::to_string(i) + " (x=" + format_double(x) +
                                   ", u=" + format_double(u) + ")");
        }
        pairs[i] = {x, 2.0 * u / (std::sqrt(w) - z)};
    }
    return BivariateSample(std::move(pairs));
}

inline BivariateSample sample_plackett(double psi, std::size_t n, std::uint64_t seed,
                                       PlackettVariant variant = PlackettVariant::printed) {
    if (!(psi > 0.0)) throw InputError("plackett: need psi > 0");
    Rng rng(seed);
    std::vector<ObservationPair> pairs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform();
        const double u = rng.uniform();
        const double w1 = u * (1.0 - u);
        const double w2 = psi + w1 * (psi - 1.0) * (psi - 1.0);
        const double w3 = 2.0 * w1 * (psi * psi * x + 1.0 - x) + psi * (1.0 - 2.0 * w1);
        const double w4 = psi * (psi + 4.0 * (1.0 - psi) * (1.0 - psi) * x * (1.0 - x) * w1);
        if (w4 < 0.0) throw ComputationError("plackett: W4 < 0 at draw " + std::to_string(i));
        const double core = w3 - (1.0 - 2.0 * u) * std::sqrt(w4);
        const double y = variant == PlackettVariant::printed ? w2 * core / 2.0 : core / (2.0 * w2);
        pairs[i] = {x, y};
    }
    return BivariateSample(std::move(pairs));
}

/// Bivariate t with 5 degrees of freedom and scale matrix [[1, 1], [1, 4]].
inline BivariateSample sample_bvt5(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    // Cholesky factor of [[1, 1], [1, 4]] is [[1, 0], [1, sqrt 3]].
    const double l22 = std::sqrt(3.0);
    std::vector<ObservationPair> pairs(n);
    for (auto& p : pairs) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        const double scale = std::sqrt(rng.chi_square(5) / 5.0);
        p = {z1 / scale, (z1 + l22 * z2) / scale};
    }
    return BivariateSample(std::move(pairs));
}

/// (X, eps / X^2) with X, eps independent N(5, 1).
inline BivariateSample sample_noise_ratio(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ObservationPair> pairs(n);
    for (auto& p : pairs) {
        const double x = rng.normal(5.0, 1.0);
        const double eps = rng.normal(5.0, 1.0);
        p = {x, eps / (x * x)};
    }
    return BivariateSample(std::move(pairs));
}

/// Uniform on the two upper sides of the triangle (-1,0), (0,1), (1,0).
inline BivariateSample sample_triangle(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ObservationPair> pairs(n);
    for (auto& p : pairs) {
        const double x = rng.uniform(-1.0, 1.0);
        p = {x, 1.0 - std::abs(x)};
    }
    return BivariateSample(std::move(pairs));
}

/// Uniform on the unit circle.
inline BivariateSample sample_circle(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ObservationPair> pairs(n);
    for (auto& p : pairs) {
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        p = {std::cos(theta), std::sin(theta)};
    }
    return BivariateSample(std::move(pairs));
}

inline BivariateSample draw(const SamplerSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case SamplerFamily::bvn: return sample_bvn(spec.param, spec.n, spec.seed);
        case SamplerFamily::fgm: return sample_fgm(spec.param, spec.n, spec.seed);
        case SamplerFamily::morgenstern: return sample_morgenstern(spec.param, spec.n, spec.seed);
        case SamplerFamily::plackett: return sample_plackett(spec.param, spec.n, spec.seed, spec.plackett_variant);
        case SamplerFamily::bvt5: return sample_bvt5(spec.n, spec.seed);
        case SamplerFamily::noise_ratio: return sample_noise_ratio(spec.n, spec.seed);
        case SamplerFamily::triangle: return sample_triangle(spec.n, spec.seed);
        case SamplerFamily::circle: return sample_circle(spec.n, spec.seed);
    }
    throw InputError("unknown sampler family");
}

}  // namespace kplot
