#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bergman/polynomial.hpp"

namespace {

using namespace bergman;

TEST(Polynomial, HornerEvaluation) {
    const std::vector<double> c{1.0, -3.0, 2.0};  // (1 - x)(1 - 2x)
    EXPECT_DOUBLE_EQ(poly::evaluate(c, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(poly::evaluate(c, 0.5), 0.0);
    EXPECT_DOUBLE_EQ(poly::evaluate(c, 2.0), 3.0);
}

TEST(Polynomial, IntegralOnShortIntervalNearOneDoesNotCancel) {
    const std::vector<double> c{0.0, 0.0, 0.0, 1.0};  // x^3
    const double s = 1.0 - std::ldexp(1.0, -40);
    const double exact = (1.0 - std::pow(s, 4)) / 4.0;
    // (1 - s^4)/4 = h (1 + s + s^2 + s^3)/4 with h = 2^-40
    const double stable = std::ldexp(1.0, -40) * (1.0 + s + s * s + s * s * s) / 4.0;
    EXPECT_NEAR(poly::integrate(c, s, 1.0) / stable, 1.0, 1e-14);
    EXPECT_GT(std::abs(exact / stable - 1.0), 0.0);  // the naive form loses digits
}

TEST(Polynomial, RootsInsideInterval) {
    // 2r - 1 changes sign at 1/2.
    auto r = poly::real_roots_in(std::vector<double>{-1.0, 2.0}, 0.0, 1.0);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r[0], 0.5, 1e-15);
    // (x - 0.2)(x - 0.7)(x - 3) has two roots in (0, 1).
    const std::vector<double> c{-0.42, 2.84, -3.9, 1.0};
    r = poly::real_roots_in(c, 0.0, 1.0);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r[0], 0.2, 1e-13);
    EXPECT_NEAR(r[1], 0.7, 1e-13);
    // x^2 + 1: none.
    EXPECT_TRUE(poly::real_roots_in(std::vector<double>{1.0, 0.0, 1.0}, 0.0, 1.0).empty());
}

TEST(Polynomial, SignClassification) {
    EXPECT_EQ(poly::sign_on(std::vector<double>{1.0}, 0.0, 1.0), poly::Sign::nonnegative);
    EXPECT_EQ(poly::sign_on(std::vector<double>{-1.0, 2.0}, 0.0, 1.0), poly::Sign::mixed);
    EXPECT_EQ(poly::sign_on(std::vector<double>{-1.0, 2.0}, 0.5, 1.0), poly::Sign::nonnegative);
    EXPECT_EQ(poly::sign_on(std::vector<double>{-1.0, 2.0}, 0.0, 0.5), poly::Sign::nonpositive);
    // Double root touching zero: (2x - 1)^2 >= 0.
    EXPECT_EQ(poly::sign_on(std::vector<double>{1.0, -4.0, 4.0}, 0.0, 1.0), poly::Sign::nonnegative);
}

TEST(Polynomial, SignAgreesWithDenseSamplingOnRandomCubics) {
    std::mt19937_64 g(77);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::vector<double> c{coef(g), coef(g), coef(g), coef(g)};
        const poly::Sign s = poly::sign_on(c, 0.0, 1.0);
        double lo = INFINITY, hi = -INFINITY;
        for (int i = 0; i <= 4000; ++i) {
            const double v = poly::evaluate(c, i / 4000.0);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (s == poly::Sign::nonnegative) EXPECT_GE(lo, -1e-12) << trial;
        if (s == poly::Sign::nonpositive) EXPECT_LE(hi, 1e-12) << trial;
        if (lo > 1e-9) EXPECT_EQ(s, poly::Sign::nonnegative) << trial;
        if (hi < -1e-9) EXPECT_EQ(s, poly::Sign::nonpositive) << trial;
        if (lo < -1e-9 && hi > 1e-9) EXPECT_EQ(s, poly::Sign::mixed) << trial;
    }
}

}  // namespace
