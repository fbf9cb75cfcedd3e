#include "bergman/special.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "bergman/errors.hpp"

namespace bergman::special {

double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta: arguments must be positive");
    return boost::math::beta(a, b);
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("log_beta: arguments must be positive");
    const double direct = boost::math::beta(a, b);
    if (direct > std::numeric_limits<double>::min() && std::isfinite(direct)) {
        return std::log(direct);
    }
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {

constexpr int kMaxIterations = 20000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a,b) * a * B(a,b) / (x^a y^b).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEpsilon) return h;
    }
    throw ConvergenceError("incomplete_beta: continued fraction did not converge", 0.0);
}

}  // namespace

IncompleteBeta incomplete_beta(double x, double y, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete_beta: a, b must be positive");
    if (x < 0.0 || y < 0.0 || x > 1.0 || y > 1.0) {
        throw DomainError("incomplete_beta: x must lie in [0, 1]");
    }
    if (x == 0.0) return {0.0, 1.0};
    if (y == 0.0) return {1.0, 0.0};

    const double log_front = a * std::log(x) + b * std::log(y) - log_beta(a, b);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double value = front * beta_continued_fraction(a, b, x) / a;
        return {value, 1.0 - value};
    }
    const double complement = front * beta_continued_fraction(b, a, y) / b;
    return {1.0 - complement, complement};
}

}  // namespace bergman::special
