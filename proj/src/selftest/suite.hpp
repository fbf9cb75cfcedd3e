#pragma once

#include <string>
#include <vector>

#include "bergman/measure.hpp"

namespace bergman::selftest {

struct SuiteMeasure {
    std::string name;
    std::string spec;
    RadialMeasure measure;
    bool has_atoms;
    bool bounded_kappa;
};

/// The fixed measure suite shared by the acceptance runner and the tests.
const std::vector<SuiteMeasure>& measure_suite();

/// Source strings that must round-trip through the parser.
const std::vector<std::string>& valid_corpus();

}  // namespace bergman::selftest
