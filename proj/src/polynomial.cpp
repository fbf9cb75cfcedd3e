#include "bergman/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "bergman/errors.hpp"

namespace bergman::poly {

double evaluate(std::span<const double> c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double integrate(std::span<const double> c, double s, double t) {
    if (t == s) return 0.0;
    // sum_j t^j s^{m-j} for m = 0, 1, ... built incrementally:
    // S_m = t * S_{m-1} + s^m.
    double total = 0.0;
    double geometric = 0.0;
    double s_pow = 1.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
        geometric = t * geometric + s_pow;
        s_pow *= s;
        total += c[m] * geometric / static_cast<double>(m + 1);
    }
    return (t - s) * total;
}

namespace {

std::size_t effective_degree(std::span<const double> c) {
    std::size_t n = c.size();
    while (n > 0 && c[n - 1] == 0.0) --n;
    return n == 0 ? 0 : n - 1;
}

double derivative_at(std::span<const double> c, double x) {
    double acc = 0.0;
    for (std::size_t m = c.size(); m-- > 1;) acc = acc * x + static_cast<double>(m) * c[m];
    return acc;
}

double rounding_scale(std::span<const double> c, double x) {
    double acc = 0.0;
    const double ax = std::abs(x);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * ax + std::abs(*it);
    return 64.0 * std::numeric_limits<double>::epsilon() * acc;
}

}  // namespace

std::vector<double> real_roots_in(std::span<const double> c, double a, double b) {
    const std::size_t deg = effective_degree(c);
    std::vector<double> roots;
    if (deg == 0) return roots;
    const double lead = c[deg];
    if (deg == 1) {
        roots.push_back(-c[0] / lead);
    } else {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
        for (std::size_t i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
        for (std::size_t i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / lead;
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
        if (solver.info() != Eigen::Success) {
            throw RootFindingError("polynomial root finding: eigenvalue iteration failed");
        }
        for (const auto& z : solver.eigenvalues()) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw RootFindingError("polynomial root finding: non-finite eigenvalue");
            }
            if (std::abs(z.imag()) <= 1e-6 * std::max(1.0, std::abs(z))) roots.push_back(z.real());
        }
    }
    for (double& r : roots) {
        for (int it = 0; it < 8; ++it) {
            const double d = derivative_at(c, r);
            if (d == 0.0) break;
            const double step = evaluate(c, r) / d;
            const double next = r - step;
            if (!std::isfinite(next) ||
                std::abs(evaluate(c, next)) > std::abs(evaluate(c, r))) break;
            r = next;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
        }
    }
    std::erase_if(roots, [&](double r) { return !(r > a && r < b); });
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::abs(x - y) <= 1e-13; }),
                roots.end());
    return roots;
}

Sign sign_on(std::span<const double> c, double a, double b) {
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double r : real_roots_in(c, a, b)) cuts.push_back(r);
    cuts.push_back(b);

    constexpr int kSamples = 9;
    bool any_positive = false;
    bool any_negative = false;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        if (!(hi > lo)) continue;
        bool piece_positive = false;
        bool piece_negative = false;
        for (int k = 0; k < kSamples; ++k) {
            const double t = std::cos(std::numbers::pi * (k + 0.5) / kSamples);
            const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
            const double v = evaluate(c, x);
            const double noise = rounding_scale(c, x);
            if (v > noise) piece_positive = true;
            if (v < -noise) piece_negative = true;
        }
        if (piece_positive && piece_negative) return Sign::unknown;
        any_positive = any_positive || piece_positive;
        any_negative = any_negative || piece_negative;
    }
    if (any_positive && any_negative) return Sign::mixed;
    if (any_negative) return Sign::nonpositive;
    return Sign::nonnegative;
}

}  // namespace bergman::poly
