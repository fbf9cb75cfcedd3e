#include "bergman/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bergman/berezin.hpp"
#include "bergman/errors.hpp"
#include "bergman/spectral.hpp"

namespace bergman {

double d_log(std::uint64_t m, std::uint64_t n) {
    if (m == n) return 0.0;
    const auto hi = static_cast<double>(std::max(m, n));
    const auto lo = static_cast<double>(std::min(m, n));
    // log((hi+1)/(lo+1)) without the cancellation of two nearby logarithms.
    return std::log1p((hi - lo) / (lo + 1.0));
}

LogGap log_gap_bound(std::uint64_t m) {
    if (m < 1) throw DomainError("log_gap_bound: m must be >= 1");
    const auto md = static_cast<double>(m);
    LogGap gap{1.0 / (md + 1.0), std::log1p(1.0 / md)};
    if (!(gap.lhs <= gap.rhs)) {
        throw VerificationFailure("log_gap_bound: 1/(m+1) > log(m+1) - log(m)", {gap.lhs, gap.rhs});
    }
    return gap;
}

MOfS m_of_s(double s) {
    if (!(s >= 0.75 && s < 1.0)) throw DomainError("m_of_s: s must lie in [3/4, 1)");
    // Decimal inputs such as 0.99 are stored slightly below their value, which
    // would put 1/(2(1-s)) just under an integer; snap those to the integer.
    const double q = 1.0 / (2.0 * (1.0 - s));
    long m = static_cast<long>(std::floor(q));
    if (std::ceil(q) - q <= 1e-9 * q) m = static_cast<long>(std::ceil(q));
    const double md = static_cast<double>(m);
    const double value = (1.0 - s) * (1.0 + s) * (md + 1.0) * std::exp(2.0 * md * std::log(s));
    if (!(value > 0.25)) {
        throw VerificationFailure("m_of_s: (1-s^2)(m+1)s^{2m} <= 1/4", {s, value});
    }
    return {m, value};
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::bounded: return "bounded";
        case Verdict::unbounded: return "unbounded";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

bool CarlesonReport::chain_holds(double tol) const {
    if (!positive || verdict != Verdict::bounded) return true;
    return slack.beta_minus_gamma <= tol && slack.gamma_minus_kappa <= tol &&
           slack.kappa_minus_five_gamma <= tol;
}

namespace {

struct GeometricTrend {
    double ratio = 1.0;
    bool growing = false;
    double last = 0.0;
};

GeometricTrend geometric_trend(const RadialMeasure& eta, int levels) {
    std::vector<double> v;
    for (double r : geometric_breaks(levels)) v.push_back(std::abs(kappa(eta, r)));
    const int decade = std::min(10, levels / 2);
    GeometricTrend trend;
    trend.last = v.back();
    if (decade < 1) return trend;
    const auto end = v.end();
    const double recent = *std::max_element(end - decade, end);
    const double earlier = *std::max_element(end - 2 * decade, end - decade);
    if (earlier > 0.0) {
        trend.ratio = recent / earlier;
    } else {
        trend.ratio = recent > 0.0 ? INFINITY : 1.0;
    }
    trend.growing = true;
    for (auto it = end - decade; it != end; ++it) {
        if (!(*it > *(it - 1))) trend.growing = false;
    }
    return trend;
}

CarlesonReport positive_report(const RadialMeasure& eta, const GridConfig& grids) {
    CarlesonReport rep;
    rep.positive = true;
    rep.horizon = grids.gamma_horizon;

    const KappaSupEstimate ksup = kappa_sup_estimate(eta, grids.uniform_points, grids.geometric_levels);
    rep.kappa_sup = ksup.value;
    rep.kappa_argmax = ksup.argmax;

    const SpectralSequence seq =
        gamma_range(eta, 0, grids.gamma_horizon, GammaMethod::moments, {}, grids.workers);
    for (long n = 0; n <= grids.gamma_horizon; ++n) {
        const double g = std::abs(seq.at(n));
        if (g > rep.gamma_sup) {
            rep.gamma_sup = g;
            rep.gamma_argmax = n;
        }
    }

    const std::vector<double> a_grid = grids.a_grid.empty() ? default_a_grid() : grids.a_grid;
    for (double a : a_grid) rep.beta_sup = std::max(rep.beta_sup, std::abs(beta_direct(eta, a).value));

    const GeometricTrend trend = geometric_trend(eta, grids.geometric_levels);
    rep.kappa_growth_ratio = trend.ratio;
    rep.kappa_growing = trend.growing;
    if (trend.ratio < 1.05) {
        rep.verdict = Verdict::bounded;
    } else if (trend.growing && trend.last > 10.0 * rep.gamma_sup) {
        rep.verdict = Verdict::unbounded;
    } else {
        rep.verdict = Verdict::inconclusive;
    }

    rep.slack.beta_minus_gamma = rep.beta_sup - rep.gamma_sup;
    rep.slack.gamma_minus_kappa = rep.gamma_sup - rep.kappa_sup;
    rep.slack.kappa_minus_five_gamma = rep.kappa_sup - 5.0 * rep.gamma_sup;

    rep.case_four_slack = -INFINITY;
    for (std::size_t i = 0; i < ksup.grid.size(); ++i) {
        const double s = ksup.grid[i];
        if (s < 0.75) continue;
        const long m = m_of_s(s).m;
        if (m > grids.gamma_horizon) continue;
        rep.case_four_slack =
            std::max(rep.case_four_slack, ksup.magnitudes[i] - 4.0 * std::abs(seq.at(m)));
    }
    if (!std::isfinite(rep.case_four_slack)) rep.case_four_slack = 0.0;
    return rep;
}

}  // namespace

CarlesonReport carleson_report(const RadialMeasure& eta, const GridConfig& grids) {
    if (grids.gamma_horizon < 1) throw DomainError("carleson_report: horizon must be >= 1");
    if (eta.positivity_certified()) return positive_report(eta, grids);

    CarlesonReport rep;
    rep.positive = false;
    rep.horizon = grids.gamma_horizon;
    const KappaSupEstimate ksup = kappa_sup_estimate(eta, grids.uniform_points, grids.geometric_levels);
    rep.kappa_sup = ksup.value;
    rep.kappa_argmax = ksup.argmax;
    const SpectralSequence seq =
        gamma_range(eta, 0, grids.gamma_horizon, GammaMethod::moments, {}, grids.workers);
    for (long n = 0; n <= grids.gamma_horizon; ++n) {
        const double g = std::abs(seq.at(n));
        if (g > rep.gamma_sup) {
            rep.gamma_sup = g;
            rep.gamma_argmax = n;
        }
    }
    const std::vector<double> a_grid = grids.a_grid.empty() ? default_a_grid() : grids.a_grid;
    for (double a : a_grid) rep.beta_sup = std::max(rep.beta_sup, std::abs(beta_direct(eta, a).value));
    rep.slack.beta_minus_gamma = rep.beta_sup - rep.gamma_sup;
    rep.slack.gamma_minus_kappa = rep.gamma_sup - rep.kappa_sup;
    rep.slack.kappa_minus_five_gamma = rep.kappa_sup - 5.0 * rep.gamma_sup;
    const GeometricTrend trend = geometric_trend(eta, grids.geometric_levels);
    rep.kappa_growth_ratio = trend.ratio;
    rep.kappa_growing = trend.growing;

    // kappa_eta is bounded iff every Jordan part has bounded kappa.
    JordanParts parts;
    try {
        parts = jordan_decompose(eta);
    } catch (const RootFindingError&) {
        rep.verdict = Verdict::inconclusive;
        return rep;
    }
    const std::pair<const char*, const RadialMeasure*> named[] = {
        {"pos_real", &parts.pos_real},
        {"neg_real", &parts.neg_real},
        {"pos_imag", &parts.pos_imag},
        {"neg_imag", &parts.neg_imag},
    };
    bool all_bounded = true;
    bool any_unbounded = false;
    for (const auto& [name, part] : named) {
        if (part->empty()) continue;
        const Verdict v = positive_report(*part, grids).verdict;
        rep.parts.emplace_back(name, v);
        all_bounded = all_bounded && v == Verdict::bounded;
        any_unbounded = any_unbounded || v == Verdict::unbounded;
    }
    rep.verdict = any_unbounded ? Verdict::unbounded
                  : all_bounded ? Verdict::bounded
                                : Verdict::inconclusive;
    return rep;
}

LipschitzReport lipschitz_report(const RadialMeasure& eta, long horizon, int random_pairs,
                                 const GridConfig& grids) {
    if (horizon < 1) throw DomainError("lipschitz_report: horizon must be >= 1");
    LipschitzReport rep;
    rep.horizon = horizon;
    rep.kappa_sup = kappa_sup_estimate(eta, grids.uniform_points, grids.geometric_levels).value;
    rep.bound = 8.0 * rep.kappa_sup;

    const SpectralSequence seq = gamma_range(eta, 0, horizon, GammaMethod::moments, {}, grids.workers);
    auto consider = [&](long m, long n) {
        const double q = std::abs(seq.at(m) - seq.at(n)) / d_log(static_cast<std::uint64_t>(m),
                                                                  static_cast<std::uint64_t>(n));
        if (q > rep.empirical_modulus) {
            rep.empirical_modulus = q;
            rep.worst_pair = {std::min(m, n), std::max(m, n)};
        }
    };

    rep.stepwise_slack = -INFINITY;
    for (long n = 0; n < horizon; ++n) {
        consider(n, n + 1);
        const double step = std::abs(seq.at(n + 1) - seq.at(n));
        rep.stepwise_slack = std::max(rep.stepwise_slack, step - rep.bound * d_log(n, n + 1));
    }

    std::mt19937_64 rng(kLipschitzSeed);
    std::uniform_int_distribution<long> pick(0, horizon);
    for (int i = 0; i < random_pairs; ++i) {
        const long m = pick(rng);
        const long n = pick(rng);
        if (m != n) consider(m, n);
    }
    rep.pass = rep.empirical_modulus <= rep.bound * (1.0 + 1e-9);
    return rep;
}

}  // namespace bergman
