#pragma once

#include <span>
#include <vector>

#include "bergman/measure.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

enum class BerezinMethod { direct, series, averages };

const char* to_string(BerezinMethod m);

/// Largest a for which the beta routes are certified.
inline constexpr double kCertifiedRadius = 0.99;

struct BerezinValue {
    Complex value{};
    double error_estimate = 0.0;
    /// False beyond kCertifiedRadius, where (1 - a^2 r^2)^-3 loses precision.
    bool certified = true;
};

/// beta(a) = 2(1-a^2)^2 int (1 + a^2 r^2) / (1 - a^2 r^2)^3 d eta(r).
BerezinValue beta_direct(const RadialMeasure& eta, double a, const QuadratureConfig& cfg = {});

struct SeriesOptions {
    double tolerance = 1e-12;
    long max_terms = 1L << 18;
};

struct SeriesValue {
    Complex value{};
    double tail_bound = 0.0;
    long terms = 0;
    /// Fitted exponent s of |gamma(n)| ~ C n^s over the last decade; the tail
    /// bound uses it when s > 0 (heuristic).
    double growth_exponent = 0.0;
    bool heuristic_tail = false;
};

/// beta(a) = (1-a^2)^2 sum_n (n+1) a^{2n} gamma(n), truncated once the tail
/// bound is below tolerance. Throws ConvergenceError past max_terms.
SeriesValue beta_series(const RadialMeasure& eta, double a, const SeriesOptions& opts = {});

/// beta(a) = 2(1-a^2)^2 F(1) + 4a^2(1-a^2)^2 int kappa(r) (2+a^2r^2)(1-r^2) r / (1-a^2r^2)^4 dr.
BerezinValue beta_via_averages(const RadialMeasure& eta, double a,
                               const QuadratureConfig& cfg = {});

struct CircleKernel {
    double numeric;
    double closed;
};

/// (1/2pi) int_0^{2pi} dtheta / (1 - 2a cos(theta) + a^2)^2 by the M-point
/// trapezoid rule, with the residue value (1 + a^2) / (1 - a^2)^3.
CircleKernel circle_kernel_integral(double a, int nodes);

struct PolarGrid {
    int min_angles = 16;
    int max_angles = 1 << 16;
    double angular_tolerance = 1e-13;
    QuadratureConfig radial{};
};

/// Berezin transform of the radial extension at w by direct integration over
/// the disk: trapezoid in angle (doubled until stable), measure-exact in radius.
/// Uses none of the beta formulas. |w| must be <= 0.99.
BerezinValue berezin_disk_oracle(const RadialMeasure& eta, Complex w, const PolarGrid& grid = {});

struct BerezinProfile {
    std::vector<double> radii;
    std::vector<Complex> values;
    std::vector<double> error_estimates;
    BerezinMethod method = BerezinMethod::direct;
    bool all_certified = true;
};

BerezinProfile berezin_profile(const RadialMeasure& eta, std::span<const double> radii,
                               BerezinMethod method, const QuadratureConfig& cfg = {},
                               const SeriesOptions& series = {});

/// {0, 0.05, ..., 0.95, 0.99}
std::vector<double> default_a_grid();

}  // namespace bergman
