#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "bergman/quadrature.hpp"
#include "bergman/special.hpp"

namespace {

using namespace bergman;

TEST(Beta, HalfIntegerValues) {
    EXPECT_NEAR(special::beta(1.0, 0.5), 2.0, 1e-15);
    // B(3, 1/2) = Gamma(3) Gamma(1/2) / Gamma(7/2) = 16/15
    EXPECT_NEAR(special::beta(3.0, 0.5), 16.0 / 15.0, 1e-15);
    EXPECT_NEAR(special::beta(2.0, 3.0), 1.0 / 12.0, 1e-16);
}

TEST(Beta, LogBetaMatchesLogOfBeta) {
    for (double a : {0.5, 1.0, 7.25, 120.0}) {
        for (double b : {0.5, 2.0, 33.0}) {
            EXPECT_NEAR(special::log_beta(a, b), std::log(special::beta(a, b)), 1e-12 * (1 + std::abs(special::log_beta(a, b))));
        }
    }
}

TEST(IncompleteBeta, EndpointsAndSymmetry) {
    EXPECT_EQ(special::incomplete_beta(0.0, 2.0, 3.0).value, 0.0);
    EXPECT_EQ(special::incomplete_beta(1.0, 2.0, 3.0).value, 1.0);
    // I_x(a, b) = 1 - I_{1-x}(b, a)
    const auto p = special::incomplete_beta(0.3, 2.5, 4.0);
    const auto q = special::incomplete_beta(0.7, 4.0, 2.5);
    EXPECT_NEAR(p.value, q.complement, 1e-15);
    EXPECT_NEAR(p.value + p.complement, 1.0, 1e-15);
}

TEST(IncompleteBeta, AgreesWithReferenceImplementationOnRandomArguments) {
    std::mt19937_64 g(20240607);
    std::uniform_real_distribution<double> shape(0.05, 60.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 4000; ++i) {
        const double a = shape(g);
        const double b = shape(g);
        const double x = unit(g);
        const double ours = special::incomplete_beta(x, a, b).value;
        const double ref = boost::math::ibeta(a, b, x);
        ASSERT_NEAR(ours, ref, 1e-12 * (1.0 + ref)) << "a=" << a << " b=" << b << " x=" << x;
        const double comp = special::incomplete_beta(x, a, b).complement;
        const double ref_c = boost::math::ibetac(a, b, x);
        ASSERT_NEAR(comp, ref_c, 1e-12 * (1.0 + ref_c)) << "a=" << a << " b=" << b << " x=" << x;
    }
}

TEST(IncompleteBeta, ComplementKeepsRelativePrecisionNearOne) {
    // 1 - I_x(1, 1/2) = (1 - x)^{1/2} exactly.
    for (int j = 10; j <= 40; j += 5) {
        const double y = std::ldexp(1.0, -j);
        const auto v = special::incomplete_beta(1.0 - y, y, 1.0, 0.5);
        EXPECT_NEAR(v.complement / std::sqrt(y), 1.0, 1e-12) << "j=" << j;
    }
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    const GaussLegendreRule& rule = gauss_legendre(32);
    ASSERT_EQ(rule.nodes.size(), 32u);
    for (int degree = 0; degree <= 63; ++degree) {
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
        const double exact = degree % 2 ? 0.0 : 2.0 / (degree + 1);
        EXPECT_NEAR(sum, exact, 1e-14) << "degree " << degree;
    }
}

TEST(CompositeQuadrature, HandlesEndpointSingularityWithGeometricBreaks) {
    QuadratureConfig cfg;
    auto breaks = normalize_breaks(geometric_breaks(cfg.geometric_levels), 0.0, 1.0 - std::ldexp(1.0, -40));
    // int_0^{1-h} (1-r)^{-1/2} dr = 2 - 2 sqrt(h)
    auto f = [](double r) { return Complex(1.0 / std::sqrt(1.0 - r)); };
    const QuadratureResult q = integrate_panels(f, breaks, cfg);
    EXPECT_TRUE(q.converged);
    EXPECT_NEAR(q.value.real(), 2.0 - 2.0 * std::ldexp(1.0, -20), 1e-11);
}

TEST(CompositeQuadrature, SmoothOscillatoryIntegrand) {
    QuadratureConfig cfg;
    const std::vector<double> breaks{0.0, 1.0};
    auto f = [](double r) { return Complex(std::cos(40.0 * r), std::sin(40.0 * r)); };
    const QuadratureResult q = integrate_panels(f, breaks, cfg);
    EXPECT_NEAR(q.value.real(), std::sin(40.0) / 40.0, 1e-14);
    EXPECT_NEAR(q.value.imag(), (1.0 - std::cos(40.0)) / 40.0, 1e-14);
}

}  // namespace
