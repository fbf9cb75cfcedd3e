#include "bergman/measure_integration.hpp"

#include <cmath>

#include "bergman/errors.hpp"
#include "bergman/polynomial.hpp"

namespace bergman {

namespace {

bool singular_at_one(const MeasurePrimitive& prim) {
    const auto* j = std::get_if<JacobiDensity>(&prim.variant());
    return j && j->p < 0.0;
}

// Density of the non-atomic terms at an interior point r (never a breakpoint).
// Singular Jacobi terms are skipped when `skip_singular` is set.
Complex density_at(const RadialMeasure& eta, double r, bool skip_singular) {
    Complex acc{};
    for (const auto& t : eta.terms()) {
        const auto& v = t.primitive.variant();
        if (const auto* p = std::get_if<PolyDensity>(&v)) {
            if (r >= p->lower && r < p->upper) acc += t.coefficient * poly::evaluate(p->coefficients, r);
        } else if (const auto* j = std::get_if<JacobiDensity>(&v)) {
            if (skip_singular && j->p < 0.0) continue;
            acc += t.coefficient * std::pow(r, j->q) * std::pow(1.0 - r, j->p);
        }
    }
    return acc;
}

double terminal_start(const QuadratureConfig& cfg) {
    if (cfg.geometric_levels < 1) throw DomainError("quadrature: geometric_levels must be >= 1");
    return 1.0 - std::ldexp(1.0, -cfg.geometric_levels);
}

// Mass-weighted centroid rule for singular Jacobi terms on [t, 1).
Complex singular_terminal(const RadialMeasure& eta, const RadialIntegrand& g, double t) {
    Complex acc{};
    const double h = 1.0 - t;
    for (const auto& term : eta.terms()) {
        if (!singular_at_one(term.primitive)) continue;
        const auto& j = std::get<JacobiDensity>(term.primitive.variant());
        const double centroid = 1.0 - h * (j.p + 1.0) / (j.p + 2.0);
        acc += term.coefficient * term.primitive.tail(t) * g(centroid);
    }
    return acc;
}

}  // namespace

std::vector<double> panel_breaks(const RadialMeasure& eta, double lo, double hi,
                                 const QuadratureConfig& cfg) {
    std::vector<double> pts = eta.breaks();
    for (double b : geometric_breaks(cfg.geometric_levels)) pts.push_back(b);
    if (eta.needs_origin_refinement()) {
        for (int j = 1; j <= 30; ++j) pts.push_back(std::ldexp(1.0, -j));
    }
    return normalize_breaks(std::move(pts), lo, hi);
}

QuadratureResult integrate_against(const RadialMeasure& eta, const RadialIntegrand& g, double lo,
                                   double hi, const QuadratureConfig& cfg) {
    QuadratureResult out;
    if (!(hi > lo)) return out;
    for (const auto& t : eta.terms()) {
        if (const auto* d = std::get_if<DiracAtom>(&t.primitive.variant())) {
            if (d->location >= lo && d->location < hi) out.value += t.coefficient * g(d->location);
        }
    }
    const double t_end = terminal_start(cfg);
    const double body_hi = std::min(hi, t_end);
    if (body_hi > lo) {
        const auto breaks = panel_breaks(eta, lo, body_hi, cfg);
        auto f = [&](double r) { return density_at(eta, r, false) * g(r); };
        QuadratureResult body = integrate_panels(f, breaks, cfg);
        out.value += body.value;
        out.error_estimate += body.error_estimate;
        out.converged = body.converged;
    }
    if (hi > t_end) {
        const double start = std::max(lo, t_end);
        const auto breaks = panel_breaks(eta, start, hi, cfg);
        auto f = [&](double r) { return density_at(eta, r, true) * g(r); };
        QuadratureResult tail = integrate_panels(f, breaks, cfg);
        out.value += tail.value;
        out.error_estimate += tail.error_estimate;
        out.converged = out.converged && tail.converged;
        if (start == t_end && hi == 1.0) out.value += singular_terminal(eta, g, t_end);
    }
    return out;
}

QuadratureResult integrate_dr(const RadialMeasure& eta, const RadialIntegrand& f, double lo,
                              double hi, const QuadratureConfig& cfg) {
    const auto breaks = panel_breaks(eta, lo, hi, cfg);
    return integrate_panels(f, breaks, cfg);
}

std::vector<RadialNode> density_rule(const RadialMeasure& eta, const QuadratureConfig& cfg,
                                     bool split) {
    std::vector<RadialNode> nodes;
    const GaussLegendreRule& rule = gauss_legendre(cfg.nodes_per_panel);
    const double t_end = terminal_start(cfg);
    std::vector<double> breaks = panel_breaks(eta, 0.0, 1.0, cfg);
    if (split) {
        std::vector<double> finer;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            finer.push_back(breaks[i]);
            finer.push_back(0.5 * (breaks[i] + breaks[i + 1]));
        }
        finer.push_back(breaks.back());
        breaks = std::move(finer);
    }
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        const bool terminal = lo >= t_end;
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double r = mid + half * rule.nodes[k];
            nodes.push_back({r, half * rule.weights[k] * density_at(eta, r, terminal)});
        }
    }
    for (const auto& term : eta.terms()) {
        if (!singular_at_one(term.primitive)) continue;
        const auto& j = std::get<JacobiDensity>(term.primitive.variant());
        const double h = 1.0 - t_end;
        nodes.push_back({1.0 - h * (j.p + 1.0) / (j.p + 2.0), term.coefficient * term.primitive.tail(t_end)});
    }
    return nodes;
}

}  // namespace bergman
