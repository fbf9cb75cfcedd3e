#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <span>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;

struct QuadratureConfig {
    int nodes_per_panel = 32;
    /// Absolute error target per panel, scaled by the panel's share of [0, 1].
    double panel_tolerance = 1e-14;
    /// Relative error target per panel.
    double relative_tolerance = 1e-13;
    int max_depth = 24;
    /// Panel breaks 1 - 2^-j for j = 1..geometric_levels.
    int geometric_levels = 40;
};

struct QuadratureResult {
    Complex value{};
    double error_estimate = 0.0;
    bool converged = true;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule for n nodes; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int n);

/// Geometric refinement toward r = 1: {1 - 2^-j : j = 1..levels}.
std::vector<double> geometric_breaks(int levels);

/// Sorted, de-duplicated breakpoints restricted to [lo, hi] with both ends included.
std::vector<double> normalize_breaks(std::vector<double> points, double lo, double hi);

namespace detail {

template <class F>
QuadratureResult adaptive_panel(const F& f, double lo, double hi, const GaussLegendreRule& rule,
                                Complex whole, const QuadratureConfig& cfg, int depth);

template <class F>
Complex gauss_panel(const F& f, double lo, double hi, const GaussLegendreRule& rule) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    Complex sum{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * Complex(f(mid + half * rule.nodes[i]));
    }
    return half * sum;
}

template <class F>
QuadratureResult adaptive_panel(const F& f, double lo, double hi, const GaussLegendreRule& rule,
                                Complex whole, const QuadratureConfig& cfg, int depth) {
    const double mid = 0.5 * (lo + hi);
    const Complex left = gauss_panel(f, lo, mid, rule);
    const Complex right = gauss_panel(f, mid, hi, rule);
    const Complex halves = left + right;
    const double err = std::abs(halves - whole);
    // Nodes are rounded to doubles, which perturbs them by about eps * |r|
    // relative to a panel of width hi - lo. Bisecting below that floor cannot
    // improve the estimate.
    const double abscissa_floor = 16.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(lo), std::abs(hi)) / (hi - lo) *
                                  std::abs(halves);
    const double target = std::max({cfg.panel_tolerance * (hi - lo),
                                    cfg.relative_tolerance * std::abs(halves), abscissa_floor});
    if (err <= target || mid <= lo || mid >= hi) {
        return {halves, err, true};
    }
    if (depth >= cfg.max_depth) {
        return {halves, err, false};
    }
    QuadratureResult a = adaptive_panel(f, lo, mid, rule, left, cfg, depth + 1);
    QuadratureResult b = adaptive_panel(f, mid, hi, rule, right, cfg, depth + 1);
    return {a.value + b.value, a.error_estimate + b.error_estimate, a.converged && b.converged};
}

}  // namespace detail

/// Composite adaptive Gauss-Legendre over the panels defined by `breaks`.
///
/// No panel straddles a break, so integrands with jumps or kinks at the breaks
/// are smooth on every panel. Each panel is bisected until the one-panel and
/// two-half estimates agree.
template <class F>
QuadratureResult integrate_panels(const F& f, std::span<const double> breaks,
                                  const QuadratureConfig& cfg) {
    const GaussLegendreRule& rule = gauss_legendre(cfg.nodes_per_panel);
    QuadratureResult total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        if (!(hi > lo)) continue;
        const Complex whole = detail::gauss_panel(f, lo, hi, rule);
        QuadratureResult part = detail::adaptive_panel(f, lo, hi, rule, whole, cfg, 0);
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.converged = total.converged && part.converged;
    }
    return total;
}

}  // namespace bergman
