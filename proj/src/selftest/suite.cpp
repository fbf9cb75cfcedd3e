#include "selftest/suite.hpp"

#include "bergman/dsl.hpp"

namespace bergman::selftest {

namespace {

SuiteMeasure entry(std::string name, std::string spec, bool bounded) {
    RadialMeasure m = dsl::parse_measure(spec);
    const bool atoms = m.has_atoms();
    return {std::move(name), std::move(spec), std::move(m), atoms, bounded};
}

}  // namespace

const std::vector<SuiteMeasure>& measure_suite() {
    static const std::vector<SuiteMeasure> suite = {
        entry("lebesgue", "lebesgue", true),
        entry("atom-0.5", "dirac(0.5)", true),
        entry("atom-0.9", "dirac(0.9)", true),
        entry("flat", "poly([1])", true),
        entry("quadratic-band", "poly([0, 0, 3], 0.2, 0.8)", true),
        entry("jacobi-1-0", "jacobi(1, 0)", true),
        entry("jacobi-singular", "jacobi(-0.5, 0)", false),
        entry("jacobi-half", "jacobi(0.5, 1.5)", true),
        entry("positive-mix", "0.5*dirac(0.3) + 2*jacobi(2, 1) + poly([1, 1], 0, 0.5)", true),
        entry("complex-mix", "1+2i*poly([-1, 2]) - 0.5i*dirac(0.7) + jacobi(0.5, 0)", true),
    };
    return suite;
}

const std::vector<std::string>& valid_corpus() {
    static const std::vector<std::string> corpus = [] {
        std::vector<std::string> out;
        for (const auto& m : measure_suite()) out.push_back(m.spec);
        for (const char* s : {
                 "2*dirac(0.5) - 0.5i*poly([0,1])",
                 "dirac(0.3) + dirac(0.3)",
                 "lebesgue - lebesgue",
                 "poly([-1,2])",
                 "0",
                 "-3*(lebesgue + 2*(dirac(0.25) - jacobi(0, 3)))",
                 "1e-3*poly([1.5e2, -2, .5], 0.125, 0.875)",
                 "1-2i*jacobi(0.25, 0.5) + 0 + -0.5*dirac(0)",
                 "((((lebesgue))))",
                 "0.1*dirac(0.1) + 0.2i*dirac(0.2)",
             }) {
            out.emplace_back(s);
        }
        return out;
    }();
    return corpus;
}

}  // namespace bergman::selftest
