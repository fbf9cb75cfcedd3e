#include <gtest/gtest.h>

#include <cmath>

#include "bergman/errors.hpp"
#include "bergman/measure.hpp"
#include "bergman/measure_integration.hpp"
#include "generators.hpp"

namespace {

using namespace bergman;
using bergman::testing::Engine;

const Complex I(0.0, 1.0);

RadialMeasure eta0() { return MeasurePrimitive::lebesgue(); }

TEST(Moment, DiracIsPointEvaluation) {
    EXPECT_DOUBLE_EQ(moment(MeasurePrimitive::dirac(0.5), 2).real(), 0.25);
}

TEST(Moment, LebesgueSecondMoment) { EXPECT_DOUBLE_EQ(moment(eta0(), 2).real(), 0.25); }

TEST(Moment, SingularJacobiMassIsBetaOneHalf) {
    const RadialMeasure j = MeasurePrimitive::jacobi(-0.5, 0.0);
    EXPECT_NEAR(moment(j, 0).real(), 2.0, 1e-15);
    // Independent check: adaptive quadrature of (1 - r)^{-1/2} with the singular end handled.
    QuadratureConfig cfg;
    const auto q = integrate_against(j, [](double) { return Complex(1.0); }, 0.0, 1.0, cfg);
    EXPECT_NEAR(q.value.real(), 2.0, 1e-10);
}

TEST(Moment, AtomAtOrigin) {
    const RadialMeasure d = MeasurePrimitive::dirac(0.0);
    EXPECT_EQ(moment(d, 0), Complex(1.0));
    EXPECT_EQ(moment(d, 1), Complex(0.0));
    EXPECT_EQ(moment(d, 50), Complex(0.0));
}

TEST(Moment, LargePowersUnderflowToZero) {
    EXPECT_EQ(moment(MeasurePrimitive::dirac(0.1), 5000), Complex(0.0));
    EXPECT_GT(moment(eta0(), 100000).real(), 0.0);  // 1/(k+2)
}

TEST(TotalMass, Examples) {
    EXPECT_DOUBLE_EQ(total_mass(eta0()).real(), 0.5);
    EXPECT_DOUBLE_EQ(total_mass(MeasurePrimitive::dirac(0.3)).real(), 1.0);
    const RadialMeasure m = 2.0 * RadialMeasure(MeasurePrimitive::dirac(0.3)) - I * eta0();
    EXPECT_NEAR(std::abs(total_mass(m) - Complex(2.0, -0.5)), 0.0, 1e-15);
}

TEST(TailMass, Examples) {
    EXPECT_NEAR(tail_mass(eta0(), 0.6).real(), 0.32, 1e-15);
    EXPECT_EQ(tail_mass(MeasurePrimitive::dirac(0.5), 0.7), Complex(0.0));
    EXPECT_EQ(tail_mass(MeasurePrimitive::dirac(0.5), 0.5), Complex(1.0));
}

TEST(TailMass, RejectsRadiusOne) {
    EXPECT_THROW(tail_mass(eta0(), 1.0), DomainError);
    EXPECT_THROW(tail_mass(eta0(), -0.1), DomainError);
}

TEST(TailMass, SingularJacobiClosedForm) {
    // (1 - r)^{-1/2} has tail 2 (1 - r)^{1/2}.
    const RadialMeasure j = MeasurePrimitive::jacobi(-0.5, 0.0);
    for (double r : {0.0, 0.3, 0.9, 1.0 - 1e-8}) {
        EXPECT_NEAR(tail_mass(j, r).real() / (2.0 * std::sqrt(1.0 - r)), 1.0, 1e-12) << r;
    }
}

TEST(Distribution, Examples) {
    const auto d = distribution(MeasurePrimitive::dirac(0.5), 0.5);
    EXPECT_EQ(d.right, Complex(1.0));
    EXPECT_EQ(d.left, Complex(0.0));
    const auto l = distribution(eta0(), 0.5);
    EXPECT_DOUBLE_EQ(l.right.real(), 0.125);
    EXPECT_DOUBLE_EQ(l.left.real(), 0.125);
    const auto full = distribution(eta0(), 2.0);
    EXPECT_DOUBLE_EQ(full.right.real(), 0.5);
    EXPECT_DOUBLE_EQ(full.left.real(), 0.5);
    EXPECT_EQ(distribution(eta0(), -1.0).right, Complex(0.0));
}

TEST(Distribution, AtomAtOriginAndFullMassAtOne) {
    const RadialMeasure m = RadialMeasure(MeasurePrimitive::dirac(0.0)) + eta0();
    EXPECT_EQ(distribution(m, 0.0).right, Complex(1.0));
    EXPECT_EQ(distribution(m, 0.0).left, Complex(0.0));
    EXPECT_NEAR(std::abs(distribution(m, 1.0).left - total_mass(m)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(distribution(m, 1.0).right - total_mass(m)), 0.0, 1e-15);
}

TEST(Construction, RejectsOutOfDomainParameters) {
    EXPECT_THROW(MeasurePrimitive::dirac(1.0), DomainError);
    EXPECT_THROW(MeasurePrimitive::dirac(-0.1), DomainError);
    EXPECT_THROW(MeasurePrimitive::dirac(std::nan("")), DomainError);
    EXPECT_THROW(MeasurePrimitive::poly({1.0}, 0.5, 0.5), DomainError);
    EXPECT_THROW(MeasurePrimitive::poly({1.0}, 0.0, 1.5), DomainError);
    EXPECT_THROW(MeasurePrimitive::poly({}, 0.0, 1.0), DomainError);
    EXPECT_THROW(MeasurePrimitive::jacobi(-1.0, 0.0), DomainError);
    EXPECT_THROW(MeasurePrimitive::jacobi(0.0, -0.5), DomainError);
}

TEST(Construction, MergesIdenticalPrimitivesAndDropsZeros) {
    const RadialMeasure twice = RadialMeasure(MeasurePrimitive::dirac(0.3)) + RadialMeasure(MeasurePrimitive::dirac(0.3));
    ASSERT_EQ(twice.terms().size(), 1u);
    EXPECT_EQ(twice.terms()[0].coefficient, Complex(2.0));
    const RadialMeasure none = eta0() - eta0();
    EXPECT_TRUE(none.empty());
    EXPECT_EQ(total_mass(none), Complex(0.0));
}

TEST(Positivity, Certification) {
    EXPECT_TRUE(eta0().positivity_certified());
    EXPECT_FALSE(RadialMeasure(MeasurePrimitive::poly({-1.0, 2.0})).positivity_certified());
    EXPECT_TRUE(RadialMeasure(MeasurePrimitive::poly({-1.0, 2.0}, 0.5, 1.0)).positivity_certified());
    EXPECT_FALSE((I * eta0()).positivity_certified());
    EXPECT_FALSE((-1.0 * eta0()).positivity_certified());
}

TEST(Jordan, CertifiedMeasureIsItsOwnPositivePart) {
    const RadialMeasure m = eta0() + RadialMeasure(MeasurePrimitive::dirac(0.2));
    const JordanParts p = jordan_decompose(m);
    EXPECT_EQ(p.pos_real.terms().size(), m.terms().size());
    EXPECT_TRUE(p.neg_real.empty());
    EXPECT_TRUE(p.pos_imag.empty());
    EXPECT_TRUE(p.neg_imag.empty());
}

TEST(Jordan, NegativeAtom) {
    const JordanParts p = jordan_decompose(-2.0 * RadialMeasure(MeasurePrimitive::dirac(0.4)));
    EXPECT_TRUE(p.pos_real.empty());
    ASSERT_EQ(p.neg_real.terms().size(), 1u);
    EXPECT_EQ(p.neg_real.terms()[0].coefficient, Complex(2.0));
    EXPECT_EQ(p.neg_real.terms()[0].primitive, MeasurePrimitive::dirac(0.4));
    EXPECT_TRUE(p.pos_imag.empty());
    EXPECT_TRUE(p.neg_imag.empty());
}

TEST(Jordan, SignChangingDensitySplitsAtRoot) {
    const JordanParts p = jordan_decompose(MeasurePrimitive::poly({-1.0, 2.0}));
    ASSERT_EQ(p.pos_real.terms().size(), 1u);
    ASSERT_EQ(p.neg_real.terms().size(), 1u);
    const auto& pos = std::get<PolyDensity>(p.pos_real.terms()[0].primitive.variant());
    const auto& neg = std::get<PolyDensity>(p.neg_real.terms()[0].primitive.variant());
    EXPECT_NEAR(pos.lower, 0.5, 1e-15);
    EXPECT_EQ(pos.upper, 1.0);
    EXPECT_EQ(neg.lower, 0.0);
    EXPECT_NEAR(neg.upper, 0.5, 1e-15);
    EXPECT_TRUE(p.pos_real.positivity_certified());
    EXPECT_TRUE(p.neg_real.positivity_certified());
    // eta_2 is -(2r - 1) on [0, 0.5): mass 1/4.
    EXPECT_NEAR(total_mass(p.neg_real).real(), 0.25, 1e-15);
}

TEST(Properties, LinearityOfMoments) {
    Engine g(1);
    for (int trial = 0; trial < 200; ++trial) {
        const RadialMeasure a = bergman::testing::complex_measure(g);
        const RadialMeasure b = bergman::testing::complex_measure(g);
        const Complex alpha(bergman::testing::uniform(g, -2, 2), bergman::testing::uniform(g, -2, 2));
        const RadialMeasure c = alpha * a + b;
        for (long k : {0L, 1L, 2L, 7L, 64L, 333L, 1000L}) {
            const Complex lhs = moment(c, k);
            const Complex rhs = alpha * moment(a, k) + moment(b, k);
            ASSERT_LE(std::abs(lhs - rhs), 1e-13 * (1.0 + std::abs(rhs))) << "trial " << trial << " k " << k;
        }
    }
}

TEST(Properties, MonotoneTailsAndMomentDecayForPositiveMeasures) {
    Engine g(2);
    for (int trial = 0; trial < 200; ++trial) {
        const RadialMeasure m = bergman::testing::positive_measure(g);
        ASSERT_TRUE(m.positivity_certified());
        EXPECT_NEAR(std::abs(tail_mass(m, 0.0) - total_mass(m)), 0.0, 1e-13);
        double prev = INFINITY;
        for (int i = 0; i < 200; ++i) {
            const double t = tail_mass(m, i / 200.0).real();
            ASSERT_LE(t, prev + 1e-14) << "trial " << trial;
            prev = t;
        }
        prev = INFINITY;
        for (long k = 0; k <= 300; ++k) {
            const double mk = moment(m, k).real();
            ASSERT_LE(mk, prev * (1.0 + 1e-14) + 1e-300) << "trial " << trial << " k " << k;
            prev = mk;
        }
    }
}

TEST(Properties, DistributionJumpEqualsAtomMass) {
    Engine g(3);
    for (int trial = 0; trial < 200; ++trial) {
        const RadialMeasure m = bergman::testing::complex_measure(g);
        for (const auto& t : m.terms()) {
            if (const auto* d = std::get_if<DiracAtom>(&t.primitive.variant())) {
                Complex atoms{};
                for (const auto& u : m.terms()) {
                    const auto* e = std::get_if<DiracAtom>(&u.primitive.variant());
                    if (e && e->location == d->location) atoms += u.coefficient;
                }
                const auto v = distribution(m, d->location);
                ASSERT_LE(std::abs(v.right - v.left - atoms), 1e-13) << trial;
            }
        }
        const auto v = distribution(m, 0.4321);
        bool atom_there = false;
        for (const auto& t : m.terms()) {
            const auto* d = std::get_if<DiracAtom>(&t.primitive.variant());
            atom_there = atom_there || (d && d->location == 0.4321);
        }
        if (!atom_there) ASSERT_LE(std::abs(v.right - v.left), 1e-15);
    }
}

TEST(Properties, JordanReconstruction) {
    Engine g(4);
    for (int trial = 0; trial < 150; ++trial) {
        const RadialMeasure m = bergman::testing::complex_measure(g);
        const JordanParts p = jordan_decompose(m);
        for (const RadialMeasure* part : {&p.pos_real, &p.neg_real, &p.pos_imag, &p.neg_imag}) {
            ASSERT_TRUE(part->positivity_certified()) << trial;
        }
        const RadialMeasure back = p.recombine();
        for (long k = 0; k <= 200; ++k) {
            const Complex x = moment(back, k);
            const Complex y = moment(m, k);
            ASSERT_LE(std::abs(x - y), 1e-12 * (1.0 + std::abs(y))) << "trial " << trial << " k " << k;
        }
    }
}

}  // namespace
