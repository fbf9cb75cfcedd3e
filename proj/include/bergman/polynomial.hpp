#pragma once

#include <span>
#include <vector>

namespace bergman::poly {

/// Horner evaluation of sum_m c[m] x^m.
double evaluate(std::span<const double> c, double x);

/// Integral of the polynomial over [s, t], computed from
/// t^{m+1} - s^{m+1} = (t - s) sum_j t^j s^{m-j} so that short intervals near 1
/// do not cancel.
double integrate(std::span<const double> c, double s, double t);

/// Real roots strictly inside (a, b), sorted, from companion-matrix eigenvalues
/// polished by Newton steps. Nearly-real conjugate pairs are reported as real.
std::vector<double> real_roots_in(std::span<const double> c, double a, double b);

enum class Sign { nonnegative, nonpositive, mixed, unknown };

/// Sign of the polynomial on [a, b]: roots split the interval, each piece is
/// sampled at Chebyshev nodes plus endpoints. `unknown` if samples contradict
/// the root structure.
Sign sign_on(std::span<const double> c, double a, double b);

}  // namespace bergman::poly
