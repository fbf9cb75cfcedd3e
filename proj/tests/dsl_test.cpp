#include <gtest/gtest.h>

#include <random>

#include "bergman/csv.hpp"
#include "bergman/dsl.hpp"
#include "selftest/suite.hpp"

namespace {

using namespace bergman;
using dsl::DiagnosticKind;

dsl::Diagnostic only_diagnostic(const dsl::ParseResult& r) {
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.diagnostics.size(), 1u);
    return r.diagnostics.empty() ? dsl::Diagnostic{} : r.diagnostics.front();
}

TEST(Parse, Lebesgue) {
    const RadialMeasure m = dsl::parse_measure("lebesgue");
    ASSERT_EQ(m.terms().size(), 1u);
    EXPECT_EQ(m.terms()[0].primitive, MeasurePrimitive::lebesgue());
    EXPECT_EQ(m.terms()[0].coefficient, Complex(1.0));
}

TEST(Parse, GrammarExercise) {
    const RadialMeasure m = dsl::parse_measure("2*dirac(0.5) - 0.5i*poly([0,1])");
    ASSERT_EQ(m.terms().size(), 2u);
    EXPECT_EQ(m.terms()[0].primitive, MeasurePrimitive::dirac(0.5));
    EXPECT_EQ(m.terms()[0].coefficient, Complex(2.0));
    EXPECT_EQ(m.terms()[1].primitive, MeasurePrimitive::lebesgue());
    EXPECT_EQ(m.terms()[1].coefficient, Complex(0.0, -0.5));
}

TEST(Parse, ScalarForms) {
    auto coeff = [](const char* s) { return dsl::parse_measure(s).terms()[0].coefficient; };
    EXPECT_EQ(coeff("1-2i*lebesgue"), Complex(1.0, -2.0));
    EXPECT_EQ(coeff("0.5i*lebesgue"), Complex(0.0, 0.5));
    EXPECT_EQ(coeff("-2*dirac(0.1)"), Complex(-2.0));
    EXPECT_EQ(coeff("+1.5e1 + 2i*jacobi(0, 0)"), Complex(15.0, 2.0));
    EXPECT_EQ(coeff("-3*(lebesgue)"), Complex(-3.0));
}

TEST(Parse, PrecedenceAndGroups) {
    // '*' binds tighter than '-': a - 2*b is a - (2*b).
    const RadialMeasure m = dsl::parse_measure("dirac(0.1) - 2*dirac(0.2)");
    EXPECT_EQ(m.terms()[1].coefficient, Complex(-2.0));
    const RadialMeasure g = dsl::parse_measure("2*(dirac(0.1) - (dirac(0.2) + lebesgue))");
    ASSERT_EQ(g.terms().size(), 3u);
    EXPECT_EQ(g.terms()[0].coefficient, Complex(2.0));
    EXPECT_EQ(g.terms()[1].coefficient, Complex(-2.0));
    EXPECT_EQ(g.terms()[2].coefficient, Complex(-2.0));
}

TEST(Parse, ZeroScalarIsTheZeroMeasure) {
    EXPECT_TRUE(dsl::parse_measure("0").empty());
    EXPECT_EQ(dsl::parse_measure("0 + lebesgue").terms().size(), 1u);
    const auto d = only_diagnostic(dsl::parse("2"));
    EXPECT_EQ(d.kind, DiagnosticKind::domain_violation);
}

TEST(Diagnostics, DiracAtOne) {
    const auto d = only_diagnostic(dsl::parse("dirac(1.0)"));
    EXPECT_EQ(d.kind, DiagnosticKind::domain_violation);
    EXPECT_EQ(d.span, (dsl::Span{1, 7, 3}));
}

TEST(Diagnostics, JacobiParameters) {
    const auto p = only_diagnostic(dsl::parse("jacobi(-1, 0)"));
    EXPECT_EQ(p.kind, DiagnosticKind::domain_violation);
    EXPECT_EQ(p.span, (dsl::Span{1, 8, 2}));
    const auto q = only_diagnostic(dsl::parse("jacobi(0.5, -0.25)"));
    EXPECT_EQ(q.span, (dsl::Span{1, 13, 5}));
}

TEST(Diagnostics, PolySupport) {
    const auto d = only_diagnostic(dsl::parse("poly([1], 0.8, 0.2)"));
    EXPECT_EQ(d.kind, DiagnosticKind::domain_violation);
    EXPECT_EQ(d.span, (dsl::Span{1, 11, 8}));
}

TEST(Diagnostics, LexicalError) {
    const auto d = only_diagnostic(dsl::parse("lebesgue $ 2"));
    EXPECT_EQ(d.kind, DiagnosticKind::lexical);
    EXPECT_EQ(d.span, (dsl::Span{1, 10, 1}));
}

TEST(Diagnostics, UnexpectedTokenCarriesExpectedSet) {
    const auto d = only_diagnostic(dsl::parse("dirac(0.5) +"));
    EXPECT_EQ(d.kind, DiagnosticKind::unexpected_token);
    EXPECT_EQ(d.span, (dsl::Span{1, 13, 0}));
    EXPECT_NE(std::find(d.expected.begin(), d.expected.end(), "'dirac'"), d.expected.end());
    const auto e = only_diagnostic(dsl::parse("dirac 0.5"));
    EXPECT_EQ(e.expected, std::vector<std::string>{"'('"});
    const auto f = only_diagnostic(dsl::parse("lebesgue lebesgue"));
    EXPECT_EQ(f.span, (dsl::Span{1, 10, 8}));
    const auto g = only_diagnostic(dsl::parse("2 lebesgue"));
    EXPECT_EQ(g.kind, DiagnosticKind::domain_violation);  // bare nonzero scalar, '*' missing
}

TEST(Diagnostics, MultilineSpans) {
    const auto d = only_diagnostic(dsl::parse("lebesgue +\n  2*dirac(2)"));
    EXPECT_EQ(d.span, (dsl::Span{2, 11, 1}));
    EXPECT_EQ(d.format().substr(0, 5), "2:11:");
}

TEST(Diagnostics, NestingLimit) {
    auto nested = [](int depth) {
        return std::string(static_cast<std::size_t>(depth), '(') + "lebesgue" +
               std::string(static_cast<std::size_t>(depth), ')');
    };
    EXPECT_TRUE(dsl::parse(nested(dsl::kMaxNesting)).ok());
    EXPECT_EQ(only_diagnostic(dsl::parse(nested(dsl::kMaxNesting + 1))).kind, DiagnosticKind::nesting_too_deep);
    EXPECT_EQ(only_diagnostic(dsl::parse(std::string(100000, '('))).kind, DiagnosticKind::nesting_too_deep);
}

TEST(Diagnostics, NumberOutOfRange) {
    EXPECT_EQ(only_diagnostic(dsl::parse("1e999*lebesgue")).kind, DiagnosticKind::domain_violation);
}

TEST(Elaborate, MergesAndCertifies) {
    const RadialMeasure twice = dsl::parse_measure("dirac(0.3) + dirac(0.3)");
    ASSERT_EQ(twice.terms().size(), 1u);
    EXPECT_EQ(twice.terms()[0].coefficient, Complex(2.0));
    const RadialMeasure none = dsl::parse_measure("lebesgue - lebesgue");
    EXPECT_TRUE(none.empty());
    EXPECT_EQ(total_mass(none), Complex(0.0));
    EXPECT_FALSE(dsl::parse_measure("poly([-1,2])").positivity_certified());
    EXPECT_TRUE(dsl::parse_measure("poly([-1,2], 0.5, 1)").positivity_certified());
}

TEST(ParseMeasure, ThrowsWithDiagnostics) {
    try {
        dsl::parse_measure("dirac(2)");
        FAIL();
    } catch (const dsl::ParseError& e) {
        ASSERT_EQ(e.diagnostics().size(), 1u);
        EXPECT_EQ(e.diagnostics()[0].span, (dsl::Span{1, 7, 1}));
    }
}

TEST(Print, NormalForm) {
    const auto r = dsl::parse("2*dirac(0.5)-0.5i*poly([0,1])");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(dsl::print(*r.ast), "2*dirac(0.5) - 0.5i*poly([0, 1], 0, 1)");
    const auto c = dsl::parse("1-2i*(lebesgue+jacobi(0.5,1))");
    EXPECT_EQ(dsl::print(*c.ast), "1-2i*(lebesgue + jacobi(0.5, 1))");
    EXPECT_EQ(dsl::print(*dsl::parse("0.1*lebesgue").ast), "0.10000000000000001*lebesgue");
}

// Generates a random valid source string (not normalized) of bounded depth.
std::string random_measure(std::mt19937_64& g, int depth) {
    auto real = [&](double lo, double hi) {
        return csv::format_real(std::uniform_real_distribution<double>(lo, hi)(g));
    };
    auto primitive = [&]() -> std::string {
        switch (g() % (depth > 0 ? 5 : 4)) {
            case 0: return "dirac(" + real(0.0, 0.999) + ")";
            case 1: return "lebesgue";
            case 2: {
                std::string s = "poly([" + real(-3, 3);
                for (int i = static_cast<int>(g() % 4); i > 0; --i) s += "," + real(-3, 3);
                s += "]";
                if (g() % 2) s += ", 0.25, 0.75";
                return s + ")";
            }
            case 3: return "jacobi(" + real(-0.99, 3) + "," + real(0, 4) + ")";
            default: return "(" + random_measure(g, depth - 1) + ")";
        }
    };
    auto term = [&]() -> std::string {
        switch (g() % 4) {
            case 0: return primitive();
            case 1: return real(-5, 5) + "*" + primitive();
            case 2: return real(-5, 5) + "i*" + primitive();
            default: return real(-5, 5) + (g() % 2 ? "+" : "-") + real(0, 5) + "i*" + primitive();
        }
    };
    std::string s = term();
    for (int i = static_cast<int>(g() % 4); i > 0; --i) s += std::string(g() % 2 ? " + " : " - ") + term();
    return s;
}

TEST(Properties, RoundTripOnCorpusAndGeneratedInputs) {
    std::vector<std::string> inputs = selftest::valid_corpus();
    std::mt19937_64 g(41);
    for (int i = 0; i < 3000; ++i) inputs.push_back(random_measure(g, 3));
    for (const std::string& s : inputs) {
        const auto a = dsl::parse(s);
        ASSERT_TRUE(a.ok()) << s << " -> " << a.diagnostics.front().format();
        const std::string printed = dsl::print(*a.ast);
        const auto b = dsl::parse(printed);
        ASSERT_TRUE(b.ok()) << printed;
        ASSERT_TRUE(dsl::same_structure(*a.ast, *b.ast)) << s << "\n" << printed;
        ASSERT_EQ(dsl::print(*b.ast), printed);
        // The elaborated measures agree too.
        const RadialMeasure x = dsl::elaborate(*a.ast);
        const RadialMeasure y = dsl::elaborate(*b.ast);
        ASSERT_EQ(x.terms().size(), y.terms().size());
        for (std::size_t k = 0; k < x.terms().size(); ++k) ASSERT_EQ(x.terms()[k], y.terms()[k]);
    }
}

TEST(Properties, TotalityOnRandomBytes) {
    std::mt19937_64 g(42);
    for (int i = 0; i < 20000; ++i) {
        std::string s(static_cast<std::size_t>(g() % 40), '\0');
        for (char& c : s) c = static_cast<char>(g() % 256);
        const auto r = dsl::parse(s);
        if (!r.ok()) {
            ASSERT_EQ(r.diagnostics.size(), 1u);
            ASSERT_GE(r.diagnostics[0].span.line, 1);
            ASSERT_GE(r.diagnostics[0].span.column, 1);
        }
    }
}

}  // namespace
