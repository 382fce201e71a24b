#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kplot/dilog.hpp"
#include "kplot/estimators.hpp"
#include "kplot/quadrant.hpp"
#include "kplot/quadrature.hpp"
#include "kplot/random.hpp"

namespace kplot {

// -- closed-form Kendall CDFs ---------------------------------------------------

struct AffinePiece {
    double slope = 0.0;
    double intercept = 0.0;

    double operator()(double t) const noexcept { return slope * t + intercept; }
};

/// A Kendall CDF that is affine between breakpoints 0 = b_0 < ... < b_m = 1,
/// with explicitly given values at the breakpoints themselves (so left- or
/// right-continuity at a jump is stated, not implied).
class PiecewiseKendallCdf {
public:
    PiecewiseKendallCdf(std::vector<double> breakpoints, std::vector<double> knot_values,
                        std::vector<AffinePiece> pieces)
        : breakpoints_(std::move(breakpoints)), knot_values_(std::move(knot_values)), pieces_(std::move(pieces)) {
        const std::size_t m = breakpoints_.size();
        if (m < 2 || breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
            throw std::invalid_argument("breakpoints must run from 0 to 1");
        }
        if (knot_values_.size() != m || pieces_.size() != m - 1) {
            throw std::invalid_argument("need one value per breakpoint and one piece per interval");
        }
        constexpr double eps = 1e-15;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const double a = breakpoints_[i];
            const double b = breakpoints_[i + 1];
            if (!(a < b)) throw std::invalid_argument("breakpoints must be strictly increasing");
            const auto& p = pieces_[i];
            if (p.slope < 0.0 || knot_values_[i] > p(a) + eps || p(a) > p(b) + eps || p(b) > knot_values_[i + 1] + eps) {
                throw std::invalid_argument("piecewise Kendall CDF must be nondecreasing");
            }
        }
        for (double v : knot_values_) {
            if (v < 0.0 || v > 1.0) throw std::invalid_argument("Kendall CDF values must lie in [0, 1]");
        }
        if (knot_values_.back() != 1.0) throw std::invalid_argument("Kendall CDF must equal 1 at t = 1");
    }

    double operator()(double t) const {
        if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("Kendall CDF argument must lie in [0, 1]");
        const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
        const auto i = static_cast<std::size_t>(it - breakpoints_.begin());
        if (*it == t) return knot_values_[i];
        return pieces_[i - 1](t);
    }

    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const AffinePiece> pieces() const noexcept { return pieces_; }

private:
    std::vector<double> breakpoints_;
    std::vector<double> knot_values_;
    std::vector<AffinePiece> pieces_;
};

namespace detail {

// Antiderivatives of -log t and -t log t, both vanishing at t = 0.
inline double neg_log_moment0(double t) noexcept { return t - xlogx(t); }
inline double neg_log_moment1(double t) noexcept { return t * t / 4.0 - t * xlogx(t) / 2.0; }

/// -integral_a^b (slope t + intercept) log t dt, exact.
inline double affine_log_integral(double a, double b, double slope, double intercept) noexcept {
    return slope * (neg_log_moment1(b) - neg_log_moment1(a)) + intercept * (neg_log_moment0(b) - neg_log_moment0(a));
}

}  // namespace detail

/// AUK = -integral_0^1 K(t) log t dt, integrated segment by segment in closed form.
inline double auk_from_curve(const PiecewiseKendallCdf& k) {
    const auto bp = k.breakpoints();
    const auto pieces = k.pieces();
    double sum = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        sum += detail::affine_log_integral(bp[i], bp[i + 1], pieces[i].slope, pieces[i].intercept);
    }
    return sum;
}

/// AUK of a tabulated curve (e.g. an empirical K-plot), read as the
/// piecewise-linear interpolant of (t, k) and integrated exactly against -log t.
inline double auk_from_curve(const KendallCurve& curve) {
    const auto& t = curve.grid;
    if (t.size() < 2 || t.size() != curve.points.size() || t.front() != 0.0 || t.back() != 1.0) {
        throw std::invalid_argument("tabulated Kendall curve must be defined over [0, 1]");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double a = t[i];
        const double b = t[i + 1];
        if (!(a < b)) throw std::invalid_argument("tabulated grid must be strictly increasing");
        const double ka = curve.points[i].k;
        const double kb = curve.points[i + 1].k;
        const double slope = (kb - ka) / (b - a);
        sum += detail::affine_log_integral(a, b, slope, ka - slope * a);
    }
    return sum;
}

inline constexpr double kCurveQuadratureTolerance = 1e-9;

/// AUK of an arbitrary Kendall CDF given as a callable on [0, 1].
///
/// The cell [0, h] next to the log singularity uses the closed-form weight
/// integral_0^h -log t dt = h (1 - log h); the rest is adaptive Gauss-Kronrod.
template <class K>
double auk_from_function(K&& k, double abs_tol = kCurveQuadratureTolerance) {
    constexpr double h = 1e-13;
    const double head = k(0.5 * h) * detail::neg_log_moment0(h);
    auto integrand = [&k](double t) { return -k(t) * std::log(t); };
    const auto r = quad::integrate(integrand, h, 1.0, 0.5 * abs_tol, 20000);
    if (!r.converged) throw ComputationError("auk_from_function: quadrature did not converge");
    return head + r.value;
}

/// Kendall CDFs of (X, 1 - |X|), X ~ Unif[-1, 1], in the quoted reference
/// form: 2t (panels 0, 1) or 1/2 + t/2 (panels 2, 3) on [0, 1/2], 1 above.
/// Panels 0 and 1 are exact. For panels 2 and 3 the law itself gives
/// triangle_kendall_cdf_exact; the reference form is kept for its constants.
inline PiecewiseKendallCdf triangle_kendall_cdf(Panel panel) {
    switch (panel) {
        case Panel::lower_left:
        case Panel::lower_right:
            return PiecewiseKendallCdf({0.0, 0.5, 1.0}, {0.0, 1.0, 1.0}, {{2.0, 0.0}, {0.0, 1.0}});
        case Panel::upper_left:
        case Panel::upper_right:
            return PiecewiseKendallCdf({0.0, 0.5, 1.0}, {0.5, 0.75, 1.0}, {{0.5, 0.5}, {0.0, 1.0}});
    }
    throw std::out_of_range("invalid panel");
}

/// Kendall CDFs of the sampled triangle law. H2 is 0 on the left side and
/// equals X on the right side, so K2(t) = K3(t) = 1/2 + t/2 on (0, 1].
inline PiecewiseKendallCdf triangle_kendall_cdf_exact(Panel panel) {
    switch (panel) {
        case Panel::lower_left:
        case Panel::lower_right: return triangle_kendall_cdf(panel);
        case Panel::upper_left:
        case Panel::upper_right: return PiecewiseKendallCdf({0.0, 1.0}, {0.0, 1.0}, {{0.5, 0.5}});
    }
    throw std::out_of_range("invalid panel");
}

/// Quoted reference Kendall CDF for the uniform law on the unit circle:
/// t + 1/4 on (0, 1/4), 1 on [1/4, 1]. K(0) = 0 (strict inequality).
inline PiecewiseKendallCdf circle_kendall_cdf() {
    return PiecewiseKendallCdf({0.0, 0.25, 1.0}, {0.0, 1.0, 1.0}, {{1.0, 0.25}, {0.0, 1.0}});
}

/// Kendall CDF of the sampled circle law, all panels. In panel 0, H is 0 on
/// the third quadrant arc, 1/2 on the first, and uniform on (0, 1/2) on the
/// other two: t + 1/4 on (0, 1/2], 1 on (1/2, 1].
inline PiecewiseKendallCdf circle_kendall_cdf_exact() {
    return PiecewiseKendallCdf({0.0, 0.5, 1.0}, {0.0, 0.75, 1.0}, {{1.0, 0.25}, {0.0, 1.0}});
}

// -- FGM copula -----------------------------------------------------------------

/// Dependence parameter of the FGM copula, |gamma| < 1.
class FgmParameter {
public:
    explicit FgmParameter(double gamma) : gamma_(gamma) {
        if (!(std::abs(gamma) < 1.0)) throw std::invalid_argument("FGM parameter must satisfy |gamma| < 1");
    }
    double value() const noexcept { return gamma_; }
    FgmParameter negated() const { return FgmParameter(-gamma_); }

private:
    double gamma_;
};

inline double fgm_copula(double v, double u, double gamma) noexcept {
    return v * u * (1.0 + gamma * (1.0 - v) * (1.0 - u));
}

/// AUK integrand under the FGM density: kernel(C(v, u)) * c(v, u).
inline double fgm_weighted_kernel(double v, double u, double gamma) noexcept {
    return auk_kernel(fgm_copula(v, u, gamma)) * (1.0 + gamma * (1.0 - 2.0 * v) * (1.0 - 2.0 * u));
}

inline constexpr double kFgmQuadratureTolerance = 1e-8;
inline constexpr double kFgmSmallGamma = 1e-3;

/// AUK(gamma) by nested adaptive quadrature of the weighted kernel.
inline double auk_fgm_quadrature(FgmParameter p) {
    const double gamma = p.value();
    auto inner = [gamma](double v) {
        auto row = [gamma, v](double u) { return fgm_weighted_kernel(v, u, gamma); };
        return quad::integrate(row, 0.0, 1.0, kFgmQuadratureTolerance * 1e-3).value;
    };
    const auto r = quad::integrate(inner, 0.0, 1.0, kFgmQuadratureTolerance * 0.1);
    if (!r.converged) throw ComputationError("auk_fgm_quadrature: quadrature did not converge");
    return r.value;
}

/// AUK(gamma) from its closed form in terms of log(1 + gamma), log|gamma| and
/// Re Li2(1 + gamma). Imaginary parts from the complex branches drop out
/// under Re[.], so the whole expression is evaluated in real arithmetic.
/// The 1/gamma and 1/gamma^2 terms cancel catastrophically near 0; below
/// |gamma| = 1e-3 the quadrature value is returned instead.
inline double auk_fgm_closed(FgmParameter p) {
    const double g = p.value();
    if (std::abs(g) < kFgmSmallGamma) return auk_fgm_quadrature(p);
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    const double log1g = std::log1p(g);
    const double logg = std::log(std::abs(g));
    const double li2 = dilog_real(1.0 + g);
    const double cross = logg * log1g;
    const double t1 = g * (-29.0 + 6.0 * log1g) / 108.0;
    const double t2 = (-13.0 + 3.0 * pi2 - 9.0 * log1g - 18.0 * cross - 18.0 * li2) / (18.0 * g);
    const double t3 = (-pi2 + 20.0 * log1g + 6.0 * cross + 6.0 * li2) / (36.0 * g * g);
    const double t4 = (167.0 - 6.0 * pi2 - 72.0 * log1g + 36.0 * cross + 36.0 * li2) / 72.0;
    return t1 + t2 + t3 + t4;
}

/// Population D-vector of the FGM copula: (AUK(g), AUK(-g), AUK(-g), AUK(g)).
inline std::array<double, 4> auk_fgm_components(FgmParameter p) {
    const double plus = auk_fgm_closed(p);
    const double minus = auk_fgm_closed(p.negated());
    return {plus, minus, minus, plus};
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t draws = 0;
};

/// AUK(gamma) as the mean of the weighted kernel over independent uniform pairs.
inline MonteCarloEstimate auk_fgm_mc(FgmParameter p, std::size_t n_draws, std::uint64_t seed) {
    if (n_draws < 1) throw std::invalid_argument("auk_fgm_mc: need at least one draw");
    Rng rng(seed);
    const double gamma = p.value();
    // Welford accumulation keeps the variance stable at 1e7 draws.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n_draws; ++i) {
        const double v = rng.uniform();
        const double u = rng.uniform();
        const double x = fgm_weighted_kernel(v, u, gamma);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    MonteCarloEstimate out;
    out.mean = mean;
    out.draws = n_draws;
    out.std_error = n_draws > 1 ? std::sqrt(m2 / static_cast<double>(n_draws - 1) / static_cast<double>(n_draws)) : 0.0;
    return out;
}

// -- bivariate normal -------------------------------------------------------------

/// AUK of the bivariate normal with correlation rho by two-sample plug-in:
/// an empirical H from n_fit pairs, averaged over n_eval fresh pairs.
inline double auk_bvn_mc(double rho, std::size_t n_fit, std::size_t n_eval, std::uint64_t seed) {
    if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("auk_bvn_mc: need |rho| < 1");
    if (n_fit < 1 || n_eval < 1) throw std::invalid_argument("auk_bvn_mc: need n_fit, n_eval >= 1");
    Rng rng(seed);
    const double s = std::sqrt(1.0 - rho * rho);
    auto draw = [&](std::size_t n, std::vector<double>& xs, std::vector<double>& ys) {
        xs.resize(n);
        ys.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = rng.normal();
            ys[i] = rho * xs[i] + s * rng.normal();
        }
    };
    std::vector<double> fx, fy, ex, ey;
    draw(n_fit, fx, fy);
    draw(n_eval, ex, ey);
    const auto counts = dominance_counts(fx, fy, ex, ey);
    double sum = 0.0;
    for (auto c : counts) sum += auk_kernel(static_cast<double>(c) / static_cast<double>(n_fit));
    return sum / static_cast<double>(n_eval);
}

struct EtaConfig {
    std::size_t n_fit = 30000;
    std::size_t n_eval = 5000;
    std::uint64_t seed = 1;
};

struct EtaPoint {
    double abs_rho;
    double i_auk;
};

/// Normal-calibration table |rho| -> I_AUK.
///
/// Reflecting X (or Y) turns a normal pair with correlation rho into one with
/// -rho and maps panel 0 onto panel 1 (or 2); reflecting both preserves rho
/// and maps panel 0 onto 3. So D(rho) = (A(rho), A(-rho), A(-rho), A(rho))
/// with A = auk_bvn_mc, and only two Monte-Carlo runs are needed per point.
/// |rho| = 1 is the comonotone limit, I_AUK = 1 exactly.
inline std::vector<EtaPoint> eta_curve(std::span<const double> abs_rho_grid, const EtaConfig& config = {}) {
    std::vector<EtaPoint> out;
    out.reserve(abs_rho_grid.size());
    for (std::size_t i = 0; i < abs_rho_grid.size(); ++i) {
        const double r = abs_rho_grid[i];
        if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("eta_curve: |rho| must lie in [0, 1]");
        if (r == 1.0) {
            out.push_back({r, 1.0});
            continue;
        }
        const double plus = auk_bvn_mc(r, config.n_fit, config.n_eval, derive_seed(config.seed, 2 * i));
        const double minus = auk_bvn_mc(-r, config.n_fit, config.n_eval, derive_seed(config.seed, 2 * i + 1));
        out.push_back({r, dependence_index({plus, minus, minus, plus})});
    }
    return out;
}

inline void write_eta_csv(std::ostream& out, std::span<const EtaPoint> table) {
    out << "abs_rho,i_auk\n";
    for (const auto& p : table) out << format_double(p.abs_rho) << ',' << format_double(p.i_auk) << '\n';
}

}  // namespace kplot
