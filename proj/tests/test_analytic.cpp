#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace kplot;

namespace {

// Frozen high-precision values (50-digit evaluation of the closed forms).
constexpr double kCircleAuk = 0.611516506075017;        // 53/64 - (5/16) log 2
constexpr double kTriangleLower = 0.451713204860014;
constexpr double kTriangleUpper = 0.651284903645010;    // 25/32 - (3/16) log 2
constexpr double kCircleAukExact = 0.514213204860014;   // 11/16 - (1/4) log 2
constexpr double kTriangleIndexExact = 0.239710589402411;
constexpr double kLi2Half = 0.582240526465013;
constexpr double kFgm[6][2] = {{-0.9, 0.561388339715519}, {-0.5, 0.533313501446840}, {-0.1, 0.506516486228173},
                               {0.1, 0.493552967482633},  {0.5, 0.468428511998077},  {0.9, 0.444301770725630}};

}  // namespace

TEST(AukFromFunction, LimitCurves) {
    EXPECT_NEAR(auk_from_function([](double t) { return t; }), 0.25, 1e-9);
    EXPECT_NEAR(auk_from_function([](double t) { return t - t * std::log(t); }), 0.5, 1e-9);
    EXPECT_NEAR(auk_from_function([](double) { return 1.0; }), 1.0, 1e-9);
}

TEST(AukFromFunction, ConstantCurveGivesConstant) {
    for (double c : {0.1, 0.37, 0.8}) EXPECT_NEAR(auk_from_function([c](double) { return c; }), c, 1e-9);
}

TEST(AukFromCurve, TabulatedLinearCurveIsExact) {
    KendallCurve c;
    c.grid = uniform_grid(11);
    for (double t : c.grid) c.points.push_back({w_transform(t), t});
    EXPECT_NEAR(auk_from_curve(c), 0.25, 1e-14);
}

TEST(PiecewiseKendallCdf, TriangleValues) {
    EXPECT_DOUBLE_EQ(triangle_kendall_cdf(Panel::lower_left)(0.3), 0.6);
    EXPECT_DOUBLE_EQ(triangle_kendall_cdf(Panel::upper_left)(0.4), 0.7);
    for (Panel p : kPanels) EXPECT_EQ(triangle_kendall_cdf(p)(1.0), 1.0);
}

TEST(PiecewiseKendallCdf, CircleValues) {
    const auto k = circle_kendall_cdf();
    EXPECT_DOUBLE_EQ(k(0.1), 0.35);
    EXPECT_EQ(k(0.25), 1.0);
    EXPECT_EQ(k(0.0), 0.0);
}

TEST(PiecewiseKendallCdf, RejectsInvalidCurves) {
    EXPECT_THROW(PiecewiseKendallCdf({0.0, 1.0}, {0.0, 0.9}, {{0.9, 0.0}}), std::invalid_argument);
    EXPECT_THROW(PiecewiseKendallCdf({0.0, 0.5, 1.0}, {0.5, 0.2, 1.0}, {{-0.6, 0.5}, {1.6, -0.6}}),
                 std::invalid_argument);
}

TEST(AnalyticAuk, TriangleAndCircle) {
    EXPECT_NEAR(auk_from_curve(triangle_kendall_cdf(Panel::lower_left)), kTriangleLower, 1e-12);
    EXPECT_NEAR(auk_from_curve(triangle_kendall_cdf(Panel::upper_right)), kTriangleUpper, 1e-12);
    EXPECT_NEAR(auk_from_curve(circle_kendall_cdf()), kCircleAuk, 1e-12);
    // The callable path agrees with the piecewise closed form.
    const auto k = circle_kendall_cdf();
    EXPECT_NEAR(auk_from_function([&k](double t) { return k(t); }), kCircleAuk, 1e-9);
}

TEST(AnalyticAuk, ExactLaws) {
    EXPECT_NEAR(auk_from_curve(triangle_kendall_cdf_exact(Panel::lower_right)), kTriangleLower, 1e-12);
    EXPECT_NEAR(auk_from_curve(triangle_kendall_cdf_exact(Panel::upper_left)), 0.625, 1e-12);
    std::array<double, 4> d{};
    for (Panel p : kPanels) d[static_cast<std::size_t>(index_of(p))] = auk_from_curve(triangle_kendall_cdf_exact(p));
    EXPECT_NEAR(dependence_index(d), kTriangleIndexExact, 1e-12);
    EXPECT_NEAR(auk_from_curve(circle_kendall_cdf_exact()), kCircleAukExact, 1e-12);
    EXPECT_EQ(circle_kendall_cdf_exact()(0.5), 0.75);
    EXPECT_DOUBLE_EQ(circle_kendall_cdf_exact()(0.4), 0.65);
    EXPECT_EQ(triangle_kendall_cdf_exact(Panel::upper_right)(0.8), 0.9);
}

TEST(Dilog, KnownValues) {
    EXPECT_NEAR(dilog_real(1.0), std::numbers::pi * std::numbers::pi / 6, 1e-14);
    EXPECT_NEAR(dilog_real(0.5), kLi2Half, 1e-14);
    EXPECT_NEAR(dilog_real(2.0), std::numbers::pi * std::numbers::pi / 4, 1e-13);
    EXPECT_NEAR(dilog_real(1.5), 2.37439527027248, 1e-13);
    EXPECT_NEAR(dilog_real(0.9), 1.29971472300496, 1e-13);
    EXPECT_THROW(dilog_real(0.0), std::invalid_argument);
    EXPECT_THROW(dilog_real(2.5), std::invalid_argument);
}

TEST(Dilog, ReflectionIdentity) {
    for (double z : {0.05, 0.2, 0.35, 0.6, 0.83, 0.97}) {
        const double lhs = dilog_real(z) + dilog_real(1.0 - z);
        const double rhs = std::numbers::pi * std::numbers::pi / 6 - std::log(z) * std::log(1.0 - z);
        EXPECT_NEAR(lhs, rhs, 1e-14) << z;
    }
}

TEST(Quadrature, SmoothIntegrals) {
    const auto r = quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, std::exp(1.0) - 1.0, 1e-12);
    const auto s = quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
    EXPECT_NEAR(s.value, 2.0 / 3.0, 1e-10);
}

TEST(FgmAuk, ClosedFormMatchesFrozenValues) {
    for (const auto& [g, v] : kFgm) EXPECT_NEAR(auk_fgm_closed(FgmParameter(g)), v, 1e-13) << g;
}

TEST(FgmAuk, ClosedMatchesQuadrature) {
    for (const auto& [g, v] : kFgm) {
        EXPECT_NEAR(auk_fgm_quadrature(FgmParameter(g)), v, 1e-7) << g;
        EXPECT_NEAR(auk_fgm_closed(FgmParameter(g)), auk_fgm_quadrature(FgmParameter(g)), 1e-6) << g;
    }
}

TEST(FgmAuk, IndependenceLimit) {
    EXPECT_NEAR(auk_fgm_closed(FgmParameter(0.0)), 0.5, 1e-9);
    EXPECT_NEAR(auk_fgm_quadrature(FgmParameter(0.0)), 0.5, 1e-8);
    EXPECT_NEAR(auk_fgm_closed(FgmParameter(1e-6)), 0.5, 1e-6);
    EXPECT_THROW(FgmParameter(1.0), std::invalid_argument);
}

TEST(FgmAuk, Components) {
    const auto zero = auk_fgm_components(FgmParameter(0.0));
    for (double c : zero) EXPECT_NEAR(c, 0.5, 1e-9);
    EXPECT_NEAR(dependence_index(zero), 0.0, 1e-8);
    const auto a = auk_fgm_components(FgmParameter(0.5));
    const auto b = auk_fgm_components(FgmParameter(-0.5));
    EXPECT_EQ(a[0], b[1]);
    EXPECT_EQ(a[3], b[2]);
    EXPECT_EQ(a[1], a[2]);
    EXPECT_EQ(a[0], a[3]);
}

TEST(FgmAuk, MonteCarlo) {
    const auto zero = auk_fgm_mc(FgmParameter(0.0), 1000000, 4);
    EXPECT_NEAR(zero.mean, 0.5, 0.002);
    const auto a = auk_fgm_mc(FgmParameter(0.8), 200000, 11);
    const auto b = auk_fgm_mc(FgmParameter(0.8), 200000, 11);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_LE(std::abs(a.mean - auk_fgm_quadrature(FgmParameter(0.8))), 3 * a.std_error);
}

TEST(BvnAuk, Limits) {
    EXPECT_NEAR(auk_bvn_mc(0.0, 30000, 5000, 1), 0.5, 0.02);
    EXPECT_NEAR(auk_bvn_mc(0.99, 30000, 5000, 2), 0.25, 0.05);
    // The limit 1 is approached slowly: the population value at -0.99 is
    // 0.9036 (exact normal CDF averaged over 3e5 draws).
    EXPECT_NEAR(auk_bvn_mc(-0.99, 30000, 5000, 3), 0.9036, 0.01);
    EXPECT_GT(auk_bvn_mc(-0.999, 30000, 5000, 4), auk_bvn_mc(-0.99, 30000, 5000, 3));
    EXPECT_THROW(auk_bvn_mc(1.0, 10, 10, 1), std::invalid_argument);
}

TEST(EtaCurve, EndPoints) {
    const std::vector<double> grid{0.0, 1.0};
    const auto t = eta_curve(grid);
    EXPECT_LE(t[0].i_auk, 0.02);
    EXPECT_EQ(t[1].i_auk, 1.0);
    std::ostringstream out;
    write_eta_csv(out, t);
    EXPECT_EQ(out.str().substr(0, 14), "abs_rho,i_auk\n");
}
