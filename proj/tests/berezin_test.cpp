#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bergman/berezin.hpp"
#include "bergman/errors.hpp"
#include "bergman/spectral.hpp"
#include "generators.hpp"

namespace {

using namespace bergman;
using bergman::testing::Engine;

RadialMeasure eta0() { return MeasurePrimitive::lebesgue(); }
RadialMeasure dirac(double x) { return MeasurePrimitive::dirac(x); }

double dirac_closed(double x, double a) {
    const double om = 1.0 - a * a;
    const double t = a * a * x * x;
    return 2.0 * om * om * (1.0 + t) / std::pow(1.0 - t, 3);
}

TEST(BetaDirect, Examples) {
    EXPECT_NEAR(beta_direct(eta0(), 0.5).value.real(), 1.0, 1e-13);
    // 2 (9/16) (17/16) / (15/16)^3 = 4896/3375, also the sum 2(1-a^2)^2 sum (n+1)^2 16^-n.
    EXPECT_NEAR(beta_direct(dirac(0.5), 0.5).value.real(), 4896.0 / 3375.0, 1e-14);
    const RadialMeasure m = RadialMeasure(MeasurePrimitive::jacobi(1.0, 2.0)) + dirac(0.4);
    EXPECT_LE(std::abs(beta_direct(m, 0.0).value - 2.0 * total_mass(m)), 1e-14);
}

TEST(BetaDirect, CertifiedRangeAndDomain) {
    EXPECT_TRUE(beta_direct(eta0(), 0.99).certified);
    EXPECT_FALSE(beta_direct(eta0(), 0.995).certified);
    EXPECT_THROW(beta_direct(eta0(), 1.0), DomainError);
    EXPECT_THROW(beta_direct(eta0(), -0.1), DomainError);
}

TEST(BetaSeries, Examples) {
    EXPECT_NEAR(beta_series(eta0(), 0.9).value.real(), 1.0, 1e-10);
    EXPECT_NEAR(beta_series(dirac(0.5), 0.5).value.real(), beta_direct(dirac(0.5), 0.5).value.real(), 1e-10);
    const RadialMeasure m = RadialMeasure(MeasurePrimitive::jacobi(0.5, 0.0)) + dirac(0.8);
    EXPECT_LE(std::abs(beta_series(m, 0.0).value - gamma0(m)), 1e-15);
}

TEST(BetaSeries, GrowingSequenceUsesHeuristicTail) {
    const SeriesValue s = beta_series(MeasurePrimitive::jacobi(-0.5, 0.0), 0.95);
    EXPECT_TRUE(s.heuristic_tail);
    EXPECT_NEAR(s.growth_exponent, 0.5, 0.05);
    EXPECT_TRUE(close_mixed(s.value, beta_direct(MeasurePrimitive::jacobi(-0.5, 0.0), 0.95).value, 1e-8));
}

TEST(BetaSeries, HorizonExceededIsReported) {
    SeriesOptions opts;
    opts.max_terms = 128;
    try {
        beta_series(eta0(), 0.99, opts);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.achieved(), 0.0);
    }
}

TEST(BetaViaAverages, Examples) {
    EXPECT_NEAR(beta_via_averages(eta0(), 0.7).value.real(), 1.0, 1e-8);
    EXPECT_NEAR(beta_via_averages(dirac(0.5), 0.9).value.real(), dirac_closed(0.5, 0.9), 1e-8);
    const RadialMeasure m = RadialMeasure(MeasurePrimitive::poly({1.0, -1.0}, 0.1, 0.6)) + dirac(0.3);
    EXPECT_LE(std::abs(beta_via_averages(m, 0.0).value - 2.0 * total_mass(m)), 1e-14);
}

TEST(CircleKernel, Examples) {
    const CircleKernel z = circle_kernel_integral(0.0, 8);
    EXPECT_DOUBLE_EQ(z.numeric, 1.0);
    EXPECT_DOUBLE_EQ(z.closed, 1.0);
    const CircleKernel h = circle_kernel_integral(0.5, 256);
    EXPECT_NEAR(h.closed, 80.0 / 27.0, 1e-14);
    EXPECT_NEAR(h.numeric, h.closed, 1e-12);
    const CircleKernel n = circle_kernel_integral(0.9, 4096);
    EXPECT_NEAR(n.closed, 263.88686397434, 1e-9);
    EXPECT_NEAR(n.numeric, n.closed, 1e-9);
    EXPECT_THROW(circle_kernel_integral(0.5, 3), DomainError);
}

TEST(DiskOracle, Examples) {
    EXPECT_NEAR(berezin_disk_oracle(eta0(), Complex(0.3, 0.4)).value.real(), 1.0, 1e-8);
    const double ref = beta_direct(dirac(0.5), 0.5).value.real();
    for (double theta : {0.0, 0.7, 2.0, 4.5}) {
        const Complex w = std::polar(0.5, theta);
        EXPECT_NEAR(berezin_disk_oracle(dirac(0.5), w).value.real(), ref, 1e-8) << theta;
    }
    const RadialMeasure m = RadialMeasure(MeasurePrimitive::jacobi(2.0, 1.0)) + dirac(0.6);
    EXPECT_LE(std::abs(berezin_disk_oracle(m, 0.0).value - 2.0 * total_mass(m)), 1e-13);
    EXPECT_THROW(berezin_disk_oracle(eta0(), 0.995), DomainError);
}

TEST(Properties, ThreeMethodsAgreeOnRandomMeasures) {
    Engine g(21);
    for (int trial = 0; trial < 20; ++trial) {
        const RadialMeasure m = bergman::testing::complex_measure(g);
        for (double a : default_a_grid()) {
            const Complex d = beta_direct(m, a).value;
            ASSERT_TRUE(close_mixed(beta_series(m, a).value, d, 1e-8)) << trial << " a " << a;
            ASSERT_TRUE(close_mixed(beta_via_averages(m, a).value, d, 1e-8)) << trial << " a " << a;
        }
    }
}

TEST(Properties, BetaBelowGammaSupForPositiveMeasures) {
    Engine g(22);
    for (int trial = 0; trial < 40; ++trial) {
        const RadialMeasure m = bergman::testing::positive_measure(g);
        double gamma_sup = 0.0;
        for (const Complex& v : gamma_range(m, 0, 4096).values) gamma_sup = std::max(gamma_sup, v.real());
        for (double a : default_a_grid()) {
            const double b = beta_direct(m, a).value.real();
            ASSERT_GE(b, 0.0);
            ASSERT_LE(b, gamma_sup + 1e-8) << trial << " a " << a;
        }
    }
}

TEST(Profile, MethodsAndFlags) {
    const std::vector<double> grid{0.0, 0.5, 0.995};
    const BerezinProfile p = berezin_profile(eta0(), grid, BerezinMethod::direct);
    ASSERT_EQ(p.values.size(), 3u);
    EXPECT_FALSE(p.all_certified);
    for (const Complex& v : p.values) EXPECT_NEAR(v.real(), 1.0, 1e-10);
    EXPECT_EQ(default_a_grid().size(), 21u);
    EXPECT_EQ(default_a_grid().back(), 0.99);
}

}  // namespace
