#include "bergman/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/measure_integration.hpp"
#include "bergman/spectral.hpp"

namespace bergman {

const char* to_string(BerezinMethod m) {
    switch (m) {
        case BerezinMethod::direct: return "direct";
        case BerezinMethod::series: return "series";
        case BerezinMethod::averages: return "averages";
    }
    return "?";
}

namespace {

void check_radius(double a, const char* what) {
    if (!(a >= 0.0 && a < 1.0)) throw DomainError(std::string(what) + ": a must lie in [0, 1)");
}

// (1 - a^2)^2 without cancellation near a = 1.
double boundary_factor(double a) {
    const double one_minus = (1.0 - a) * (1.0 + a);
    return one_minus * one_minus;
}

}  // namespace

BerezinValue beta_direct(const RadialMeasure& eta, double a, const QuadratureConfig& cfg) {
    check_radius(a, "beta_direct");
    if (a == 0.0) return {2.0 * total_mass(eta), 0.0, true};
    auto kernel = [a](double r) {
        const double ar = a * r;
        const double d = (1.0 - ar) * (1.0 + ar);
        return Complex((1.0 + ar * ar) / (d * d * d));
    };
    const QuadratureResult q = integrate_against(eta, kernel, 0.0, 1.0, cfg);
    if (!q.converged) throw ConvergenceError("beta_direct: quadrature did not converge", q.error_estimate);
    const double pre = 2.0 * boundary_factor(a);
    return {pre * q.value, pre * q.error_estimate, a <= kCertifiedRadius};
}

namespace {

// Least-squares slope and a conservative constant for |g(n)| ~ C n^s over [lo, hi].
struct PowerFit {
    double exponent = 0.0;
    double constant = 0.0;
    double max_abs = 0.0;
};

PowerFit fit_power(const std::vector<double>& mags, long lo, long hi) {
    PowerFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (long n = std::max(1L, lo); n <= hi; ++n) {
        const double v = mags[static_cast<std::size_t>(n)];
        fit.max_abs = std::max(fit.max_abs, v);
        if (!(v > 0.0)) continue;
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        const double den = count * sxx - sx * sx;
        if (den > 0.0) fit.exponent = (count * sxy - sx * sy) / den;
    }
    for (long n = std::max(1L, lo); n <= hi; ++n) {
        const double v = mags[static_cast<std::size_t>(n)];
        fit.constant = std::max(fit.constant, v / std::pow(static_cast<double>(n), fit.exponent));
    }
    return fit;
}

// sum_{n > N} (n+1) x^n
double weight_tail(long N, double x) {
    const double nd = static_cast<double>(N);
    const double one_minus = 1.0 - x;
    return std::pow(x, nd + 1.0) * (nd + 2.0 - (nd + 1.0) * x) / (one_minus * one_minus);
}

}  // namespace

SeriesValue beta_series(const RadialMeasure& eta, double a, const SeriesOptions& opts) {
    check_radius(a, "beta_series");
    SeriesValue out;
    if (a == 0.0) {
        out.value = gamma(eta, 0);
        out.terms = 1;
        return out;
    }
    const double x = a * a;
    const double pre = boundary_factor(a);
    std::vector<double> mags;
    Complex partial{};
    double best_bound = INFINITY;
    constexpr long kCheckEvery = 64;
    for (long n = 0; n <= opts.max_terms; ++n) {
        const Complex g = gamma(eta, n);
        mags.push_back(std::abs(g));
        partial += (static_cast<double>(n + 1) * std::pow(x, static_cast<double>(n))) * g;
        if (n < 32 || n % kCheckEvery != 0) continue;

        const PowerFit fit = fit_power(mags, n / 10, n);
        double tail = 0.0;
        bool heuristic = false;
        if (fit.exponent > 0.01) {
            heuristic = true;
            // sum_{k > n} (k+1) x^k C k^s, summed until the terms are negligible.
            for (long k = n + 1;; ++k) {
                const double kd = static_cast<double>(k);
                const double term = (kd + 1.0) * std::pow(x, kd) * fit.constant * std::pow(kd, fit.exponent);
                tail += term;
                if (term <= 1e-18 * tail || k - n > 10'000'000) break;
            }
        } else {
            tail = fit.max_abs * weight_tail(n, x);
        }
        const double bound = pre * tail;
        best_bound = std::min(best_bound, bound);
        const double value_scale = 1.0 + std::abs(pre * partial);
        if (bound <= opts.tolerance * value_scale) {
            out.value = pre * partial;
            out.tail_bound = bound;
            out.terms = n + 1;
            out.growth_exponent = fit.exponent;
            out.heuristic_tail = heuristic;
            return out;
        }
    }
    throw ConvergenceError("beta_series: truncation horizon exceeded", best_bound);
}

BerezinValue beta_via_averages(const RadialMeasure& eta, double a, const QuadratureConfig& cfg) {
    check_radius(a, "beta_via_averages");
    const double pre = boundary_factor(a);
    const Complex head = 2.0 * pre * distribution(eta, 1.0).right;
    if (a == 0.0) return {head, 0.0, true};
    const double a2 = a * a;
    auto integrand = [&](double r) -> Complex {
        if (r >= 1.0) return 0.0;  // (1 - r^2) kappa(r) -> 2 tail(1) = 0
        const double ar = a * r;
        const double d = (1.0 - ar) * (1.0 + ar);
        const double d2 = d * d;
        return kappa(eta, r) * ((2.0 + ar * ar) * (1.0 - r) * (1.0 + r) * r / (d2 * d2));
    };
    const QuadratureResult q = integrate_dr(eta, integrand, 0.0, 1.0, cfg);
    if (!q.converged) throw ConvergenceError("beta_via_averages: quadrature did not converge", q.error_estimate);
    const double scale = 4.0 * a2 * pre;
    return {head + scale * q.value, scale * q.error_estimate, a <= kCertifiedRadius};
}

CircleKernel circle_kernel_integral(double a, int nodes) {
    check_radius(a, "circle_kernel_integral");
    if (nodes < 4) throw DomainError("circle_kernel_integral: need at least 4 nodes");
    double sum = 0.0;
    const double gap = (1.0 - a) * (1.0 - a);
    for (int l = 0; l < nodes; ++l) {
        const double half_angle = std::numbers::pi * l / nodes;
        const double s = std::sin(half_angle);
        // 1 - 2a cos(theta) + a^2 = (1 - a)^2 + 4a sin^2(theta / 2)
        const double d = gap + 4.0 * a * s * s;
        sum += 1.0 / (d * d);
    }
    const double a2 = a * a;
    const double one_minus = (1.0 - a) * (1.0 + a);
    return {sum / nodes, (1.0 + a2) / (one_minus * one_minus * one_minus)};
}

namespace {

// (1/pi) int_0^{2pi} dtheta / |1 - r e^{-i theta} w|^4 by the trapezoid rule.
class AngularIntegral {
public:
    AngularIntegral(Complex w, const PolarGrid& grid) : w_(w), grid_(grid) {}

    double operator()(double r) {
        const double rho = r * std::abs(w_);
        int m = grid_.min_angles;
        if (rho > 0.0) {
            // Fourier coefficients of the integrand decay like k rho^k.
            const double freq = std::log(grid_.angular_tolerance) / std::log(rho);
            m = std::max(m, 2 * static_cast<int>(std::ceil(freq)) + 16);
        }
        m = std::min(m, grid_.max_angles / 2);
        for (;;) {
            // The even nodes of the 2m rule are the m rule.
            const auto& rot = rotations(2 * m);
            double even = 0.0;
            double odd = 0.0;
            for (std::size_t l = 0; l < rot.size(); ++l) {
                const double d = std::norm(1.0 - r * rot[l]);
                (l % 2 == 0 ? even : odd) += 1.0 / (d * d);
            }
            const double coarse = 2.0 * even / m;
            const double fine = 2.0 * (even + odd) / (2.0 * m);
            if (std::abs(fine - coarse) <= grid_.angular_tolerance * std::abs(fine)) return fine;
            if (2 * m >= grid_.max_angles) {
                throw ConvergenceError("berezin_disk_oracle: angular rule did not stabilize",
                                       std::abs(fine - coarse));
            }
            m *= 2;
        }
    }

private:
    // e^{-i theta_l} w for theta_l = 2 pi l / count.
    const std::vector<Complex>& rotations(int count) {
        auto& slot = cache_[count];
        if (slot.empty()) {
            slot.resize(static_cast<std::size_t>(count));
            for (int l = 0; l < count; ++l) {
                slot[static_cast<std::size_t>(l)] = std::polar(1.0, -2.0 * std::numbers::pi * l / count) * w_;
            }
        }
        return slot;
    }

    Complex w_;
    const PolarGrid& grid_;
    std::map<int, std::vector<Complex>> cache_;
};

}  // namespace

BerezinValue berezin_disk_oracle(const RadialMeasure& eta, Complex w, const PolarGrid& grid) {
    const double a = std::abs(w);
    if (!(a <= kCertifiedRadius)) throw DomainError("berezin_disk_oracle: |w| must be <= 0.99");
    AngularIntegral inner(w, grid);
    const QuadratureResult q =
        integrate_against(eta, [&](double r) { return Complex(inner(r)); }, 0.0, 1.0, grid.radial);
    if (!q.converged) throw ConvergenceError("berezin_disk_oracle: radial quadrature did not converge", q.error_estimate);
    const double pre = boundary_factor(a);
    return {pre * q.value, pre * q.error_estimate, true};
}

BerezinProfile berezin_profile(const RadialMeasure& eta, std::span<const double> radii,
                               BerezinMethod method, const QuadratureConfig& cfg,
                               const SeriesOptions& series) {
    BerezinProfile profile;
    profile.method = method;
    for (double a : radii) {
        profile.radii.push_back(a);
        switch (method) {
            case BerezinMethod::direct: {
                const BerezinValue v = beta_direct(eta, a, cfg);
                profile.values.push_back(v.value);
                profile.error_estimates.push_back(v.error_estimate);
                profile.all_certified = profile.all_certified && v.certified;
                break;
            }
            case BerezinMethod::series: {
                const SeriesValue v = beta_series(eta, a, series);
                profile.values.push_back(v.value);
                profile.error_estimates.push_back(v.tail_bound);
                profile.all_certified = profile.all_certified && a <= kCertifiedRadius;
                break;
            }
            case BerezinMethod::averages: {
                const BerezinValue v = beta_via_averages(eta, a, cfg);
                profile.values.push_back(v.value);
                profile.error_estimates.push_back(v.error_estimate);
                profile.all_certified = profile.all_certified && v.certified;
                break;
            }
        }
    }
    return profile;
}

std::vector<double> default_a_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 19; ++i) grid.push_back(i / 20.0);
    grid.push_back(0.99);
    return grid;
}

}  // namespace bergman
