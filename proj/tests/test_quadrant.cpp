#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace kplot;
using kplot::testing::pairs;

TEST(QuadrantProbs, ThreeDiagonalPoints) {
    const auto s = pairs({{1, 1}, {2, 2}, {3, 3}});
    const auto p = quadrant_probs(s, 1);
    EXPECT_DOUBLE_EQ(p.h0, 1.0 / 3);
    EXPECT_EQ(p.h1, 0.0);
    EXPECT_EQ(p.h2, 0.0);
    EXPECT_DOUBLE_EQ(p.h3, 2.0 / 3);
    EXPECT_DOUBLE_EQ(p.f, 1.0 / 3);
    EXPECT_DOUBLE_EQ(p.g, 1.0 / 3);
}

TEST(QuadrantProbs, AntiDiagonalPair) {
    const auto p = quadrant_probs(pairs({{1, 2}, {2, 1}}), 0);
    EXPECT_EQ(p.h0, 0.0);
    EXPECT_EQ(p.h1, 0.5);
    EXPECT_EQ(p.h2, 0.0);
    EXPECT_EQ(p.h3, 0.5);
}

TEST(QuadrantProbs, IndexOutOfRange) {
    EXPECT_THROW(quadrant_probs(pairs({{1, 2}, {2, 1}}), 2), std::out_of_range);
}

TEST(QuadrantCounts, PartitionIsExact) {
    const auto s = kplot::testing::random_sample(300, 1);
    for (const auto& c : quadrant_counts(s)) {
        EXPECT_EQ(c.h0 + c.h1 + c.h2 + c.h3, 300);
        EXPECT_LE(c.h0, c.f);
        EXPECT_LE(c.h0, c.g);
        EXPECT_GE(c.h3, 1);  // the point itself
    }
}

void expect_same_counts(const BivariateSample& s) {
    const auto fast = quadrant_counts(s);
    const auto slow = quadrant_counts_naive(s);
    ASSERT_EQ(fast.size(), slow.size());
    for (std::size_t j = 0; j < fast.size(); ++j) {
        EXPECT_EQ(fast[j].h0, slow[j].h0) << j;
        EXPECT_EQ(fast[j].f, slow[j].f) << j;
        EXPECT_EQ(fast[j].g, slow[j].g) << j;
        EXPECT_EQ(fast[j].h3, slow[j].h3) << j;
    }
}

TEST(QuadrantCounts, FastMatchesNaiveContinuous) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) expect_same_counts(kplot::testing::random_sample(257, seed));
}

TEST(QuadrantCounts, FastMatchesNaiveWithTies) {
    Rng rng(42);
    std::vector<ObservationPair> v(400);
    for (auto& p : v) {
        p.x = static_cast<double>(rng.index(12));
        p.y = static_cast<double>(rng.index(9));
    }
    expect_same_counts(BivariateSample(v));
    expect_same_counts(pairs({{1, 5}, {1, 5}, {1, 5}, {2, 5}}));
}

TEST(QuadrantCounts, NegationShiftsOnlyTheSelfPoint) {
    const auto s = kplot::testing::random_sample(200, 7);
    const auto base = quadrant_counts(s);
    const auto nx = quadrant_counts(transform(s, [](double x) { return -x; }, [](double y) { return y; }));
    const auto ny = quadrant_counts(transform(s, [](double x) { return x; }, [](double y) { return -y; }));
    const auto nb = quadrant_counts(transform(s, [](double x) { return -x; }, [](double y) { return -y; }));
    for (std::size_t j = 0; j < base.size(); ++j) {
        EXPECT_EQ(nx[j].h0, base[j].h1);
        EXPECT_EQ(nx[j].h1, base[j].h0);
        EXPECT_EQ(nx[j].h2, base[j].h3 - 1);
        EXPECT_EQ(nx[j].h3, base[j].h2 + 1);

        EXPECT_EQ(ny[j].h0, base[j].h2);
        EXPECT_EQ(ny[j].h2, base[j].h0);
        EXPECT_EQ(ny[j].h1, base[j].h3 - 1);
        EXPECT_EQ(ny[j].h3, base[j].h1 + 1);

        EXPECT_EQ(nb[j].h1, base[j].h2);
        EXPECT_EQ(nb[j].h2, base[j].h1);
        EXPECT_EQ(nb[j].h0, base[j].h3 - 1);
        EXPECT_EQ(nb[j].h3, base[j].h0 + 1);
    }
}

TEST(Panel, IndexRoundTrip) {
    for (int i = 0; i < 4; ++i) EXPECT_EQ(index_of(panel_from_index(i)), i);
    EXPECT_THROW(panel_from_index(4), std::out_of_range);
}
