#pragma once

#include <functional>
#include <vector>

#include "bergman/measure.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

using RadialIntegrand = std::function<Complex(double)>;

/// Panel breaks on [lo, hi] for integrands built from eta: the measure's own
/// breakpoints, geometric refinement toward 1, and toward 0 when needed.
std::vector<double> panel_breaks(const RadialMeasure& eta, double lo, double hi,
                                 const QuadratureConfig& cfg);

/// Integral of g over [lo, hi) with respect to eta. Atoms are summed exactly;
/// densities use adaptive panel quadrature. The last geometric panel of a
/// Jacobi density with p < 0 uses its exact mass at the centroid.
QuadratureResult integrate_against(const RadialMeasure& eta, const RadialIntegrand& g, double lo,
                                   double hi, const QuadratureConfig& cfg);

/// Integral of f(r) dr over [lo, hi] on eta's panel breaks.
QuadratureResult integrate_dr(const RadialMeasure& eta, const RadialIntegrand& f, double lo,
                              double hi, const QuadratureConfig& cfg);

/// Fixed (non-adaptive) rule sum_i w_i g(r_i) for the density part of eta.
/// `split` halves every panel, which yields a second rule for error estimates.
struct RadialNode {
    double r;
    Complex weight;
};
std::vector<RadialNode> density_rule(const RadialMeasure& eta, const QuadratureConfig& cfg,
                                     bool split = false);

}  // namespace bergman
