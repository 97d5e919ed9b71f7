#include <gtest/gtest.h>

#include "hsbnet/b2m.hpp"
#include "hsbnet/error.hpp"
#include "hsbnet/rng.hpp"

using namespace hsbnet;

namespace {

B2MFunction example_pwl() { return B2MFunction::piecewise({{0, 0}, {1e6, 5e4}, {3e6, 8e4}}); }

}  // namespace

TEST(B2M, LinearIdentitySlope) { EXPECT_DOUBLE_EQ(B2MFunction::linear(1.0).eval(1e6), 1e6); }

TEST(B2M, LinearInverse) { EXPECT_NEAR(B2MFunction::linear(0.01).invert(100.0), 1e4, 1e-9); }

TEST(B2M, PiecewiseMiddleSegment) { EXPECT_NEAR(example_pwl().eval(2e6), 6.5e4, 1e-9); }

TEST(B2M, PiecewiseSaturates) {
    const auto f = example_pwl();
    EXPECT_DOUBLE_EQ(f.eval(1e9), 8e4);
    EXPECT_DOUBLE_EQ(f.saturation(), 8e4);
    EXPECT_THROW(f.invert(8.0001e4), UnreachableRateError);
    EXPECT_NEAR(f.invert(8e4), 3e6, 1e-6);
}

TEST(B2M, ZeroAtOrigin) {
    EXPECT_DOUBLE_EQ(example_pwl().eval(0.0), 0.0);
    EXPECT_DOUBLE_EQ(B2MFunction::linear(3e-4).eval(0.0), 0.0);
    EXPECT_DOUBLE_EQ(example_pwl().invert(0.0), 0.0);
}

TEST(B2M, RejectsBadBreakpoints) {
    EXPECT_THROW(B2MFunction::piecewise({{0, 0}}), ValidationError);
    EXPECT_THROW(B2MFunction::piecewise({{1, 0}, {2, 1}}), ValidationError);
    EXPECT_THROW(B2MFunction::piecewise({{0, 0}, {1e6, 1}, {1e6, 2}}), ValidationError);
    EXPECT_THROW(B2MFunction::piecewise({{0, 0}, {1e6, 1e4}, {2e6, 1e4}}), ValidationError);
    // convex corner
    EXPECT_THROW(B2MFunction::piecewise({{0, 0}, {1e6, 1e4}, {2e6, 5e4}}), ValidationError);
    EXPECT_THROW(B2MFunction::linear(0.0), ValidationError);
    EXPECT_THROW(B2MFunction::linear(-1.0), ValidationError);
}

TEST(B2M, SegmentsDescribeTheCurve) {
    const auto segs = example_pwl().segments();
    ASSERT_EQ(segs.size(), 2u);
    EXPECT_DOUBLE_EQ(segs[0].length, 1e6);
    EXPECT_DOUBLE_EQ(segs[0].slope, 0.05);
    EXPECT_DOUBLE_EQ(segs[1].length, 2e6);
    EXPECT_DOUBLE_EQ(segs[1].slope, 0.015);
    const auto lin = B2MFunction::linear(2e-4).segments();
    ASSERT_EQ(lin.size(), 1u);
    EXPECT_TRUE(std::isinf(lin[0].length));
}

namespace {

B2MFunction random_pwl(Rng& rng) {
    std::vector<B2MFunction::Breakpoint> pts{{0, 0}};
    double slope = 1e-2 * (0.1 + uniform01(rng));
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < n; ++k) {
        const double len = 1e5 + 5e6 * uniform01(rng);
        pts.push_back({pts.back().bit_rate + len, pts.back().msg_rate + slope * len});
        slope *= 0.2 + 0.8 * uniform01(rng);
    }
    return B2MFunction::piecewise(std::move(pts));
}

}  // namespace

TEST(B2M, RoundTripAndMonotoneFuzz) {
    Rng rng = make_stream(1, {});
    for (int c = 0; c < 500; ++c) {
        const auto f = c % 2 ? random_pwl(rng) : B2MFunction::linear(1e-5 + 1e-3 * uniform01(rng));
        double prev = -1.0;
        for (int k = 0; k < 60; ++k) {
            const double r = 3e7 * uniform01(rng) * k / 60.0;
            const double m = f.eval(r);
            if (m < f.saturation()) {
                ASSERT_NEAR(f.invert(m), r, 1e-9 * std::max(r, 1.0)) << c;
            }
        }
        for (double r = 0.0; r < 3e7; r += 1e5) {
            const double m = f.eval(r);
            ASSERT_GE(m, prev);
            prev = m;
        }
    }
}

TEST(B2M, ConcaveFuzz) {
    Rng rng = make_stream(2, {});
    for (int c = 0; c < 500; ++c) {
        const auto f = random_pwl(rng);
        for (int k = 0; k < 50; ++k) {
            double r1 = 3e7 * uniform01(rng), r2 = 3e7 * uniform01(rng);
            if (r1 > r2) std::swap(r1, r2);
            const double mid = f.eval(0.5 * (r1 + r2));
            ASSERT_GE(mid, 0.5 * (f.eval(r1) + f.eval(r2)) - 1e-9 * mid);
        }
    }
}
