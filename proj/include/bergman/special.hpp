#pragma once

namespace bergman::special {

/// Euler Beta function B(a, b) for a, b > 0.
double beta(double a, double b);

double log_beta(double a, double b);

struct IncompleteBeta {
    double value;       ///< I_x(a, b)
    double complement;  ///< 1 - I_x(a, b), computed without cancellation
};

/// Regularized incomplete Beta function by continued fraction (modified Lentz).
///
/// Both x and y = 1 - x are taken from the caller so that arguments close to 1
/// keep their full relative precision. Target accuracy is 1e-12 relative.
IncompleteBeta incomplete_beta(double x, double y, double a, double b);

inline IncompleteBeta incomplete_beta(double x, double a, double b) {
    return incomplete_beta(x, 1.0 - x, a, b);
}

}  // namespace bergman::special
