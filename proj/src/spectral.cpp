#include "bergman/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bergman/errors.hpp"
#include "bergman/measure_integration.hpp"
#include "bergman/parallel.hpp"

namespace bergman {

const char* to_string(GammaMethod m) {
    switch (m) {
        case GammaMethod::moments: return "moments";
        case GammaMethod::distribution: return "distribution";
        case GammaMethod::averages: return "averages";
    }
    return "?";
}

bool close_mixed(Complex x, Complex y, double tol) {
    return std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)));
}

Complex gamma(const RadialMeasure& eta, long n) {
    if (n < 0) throw DomainError("gamma: n must be >= 0");
    return 2.0 * static_cast<double>(n + 1) * moment(eta, 2 * n);
}

Complex gamma0(const RadialMeasure& eta) { return 2.0 * total_mass(eta); }

namespace {

QuadratureResult checked(QuadratureResult r, const char* what) {
    if (!r.converged) {
        throw ConvergenceError(std::string(what) + ": quadrature did not converge",
                               r.error_estimate);
    }
    return r;
}

}  // namespace

QuadratureResult gamma_via_distribution(const RadialMeasure& eta, long n,
                                        const QuadratureConfig& cfg) {
    if (n < 1) throw DomainError("gamma_via_distribution: n must be >= 1");
    const double nd = static_cast<double>(n);
    const double power = 2.0 * nd - 1.0;
    auto integrand = [&](double r) { return distribution(eta, r).right * std::pow(r, power); };
    QuadratureResult q = checked(integrate_dr(eta, integrand, 0.0, 1.0, cfg), "gamma_via_distribution");
    const double scale = 4.0 * nd * (nd + 1.0);
    return {2.0 * (nd + 1.0) * total_mass(eta) - scale * q.value, scale * q.error_estimate, true};
}

QuadratureResult gamma_via_averages(const RadialMeasure& eta, long n,
                                    const QuadratureConfig& cfg) {
    if (n < 0) throw DomainError("gamma_via_averages: n must be >= 0");
    if (n == 0) return {gamma0(eta), 0.0, true};
    const double nd = static_cast<double>(n);
    const double power = 2.0 * nd - 1.0;
    // Gauss nodes in the last panels can round to r = 1, where the weight
    // (1 - r^2) vanishes and the product tends to 2 * tail(1) = 0.
    auto integrand = [&](double r) -> Complex {
        if (r >= 1.0) return 0.0;
        return kappa(eta, r) * (std::pow(r, power) * (1.0 - r) * (1.0 + r));
    };
    QuadratureResult q = checked(integrate_dr(eta, integrand, 0.0, 1.0, cfg), "gamma_via_averages");
    const double scale = 2.0 * nd * (nd + 1.0);
    return {scale * q.value, scale * q.error_estimate, true};
}

SpectralSequence gamma_range(const RadialMeasure& eta, long n0, long n1, GammaMethod method,
                             const QuadratureConfig& cfg, unsigned workers) {
    if (n0 < 0 || n1 < n0) throw DomainError("gamma_range: need 0 <= n0 <= n1");
    SpectralSequence seq;
    seq.first = n0;
    seq.method = method;
    seq.measure = eta;
    const auto count = static_cast<std::size_t>(n1 - n0 + 1);
    seq.values.resize(count);
    std::vector<double> errors(count, 0.0);
    parallel_for(count, workers, [&](std::size_t i) {
        const long n = n0 + static_cast<long>(i);
        switch (method) {
            case GammaMethod::moments:
                seq.values[i] = gamma(eta, n);
                break;
            case GammaMethod::distribution: {
                const QuadratureResult q =
                    n == 0 ? QuadratureResult{gamma0(eta), 0.0, true} : gamma_via_distribution(eta, n, cfg);
                seq.values[i] = q.value;
                errors[i] = q.error_estimate;
                break;
            }
            case GammaMethod::averages: {
                const QuadratureResult q = gamma_via_averages(eta, n, cfg);
                seq.values[i] = q.value;
                errors[i] = q.error_estimate;
                break;
            }
        }
    });
    seq.error_estimate = errors.empty() ? 0.0 : *std::max_element(errors.begin(), errors.end());
    return seq;
}

Complex kappa(const RadialMeasure& eta, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("kappa: r must lie in [0, 1)");
    return 2.0 * tail_mass(eta, r) / ((1.0 - r) * (1.0 + r));
}

KappaSupEstimate kappa_sup_estimate(const RadialMeasure& eta, int uniform_points,
                                    int geometric_levels) {
    if (uniform_points < 1 || geometric_levels < 1) {
        throw DomainError("kappa_sup_estimate: grid sizes must be positive");
    }
    std::vector<double> pts;
    for (int i = 0; i < uniform_points; ++i) pts.push_back(static_cast<double>(i) / uniform_points);
    for (double b : geometric_breaks(geometric_levels)) {
        if (b < 1.0) pts.push_back(b);
    }
    for (double b : eta.breaks()) {
        if (b < 1.0) pts.push_back(b);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    KappaSupEstimate est;
    est.grid = pts;
    est.magnitudes.reserve(pts.size());
    for (double r : pts) est.magnitudes.push_back(std::abs(kappa(eta, r)));

    auto consider = [&](double r, double v) {
        if (v > est.value) {
            est.value = v;
            est.argmax = r;
        }
    };
    for (std::size_t i = 0; i < pts.size(); ++i) consider(pts[i], est.magnitudes[i]);

    // Golden-section refinement around the three largest interior local maxima.
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        if (est.magnitudes[i] >= est.magnitudes[i - 1] && est.magnitudes[i] >= est.magnitudes[i + 1]) {
            peaks.push_back(i);
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [&](std::size_t a, std::size_t b) { return est.magnitudes[a] > est.magnitudes[b]; });
    if (peaks.size() > 3) peaks.resize(3);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t i : peaks) {
        double lo = pts[i - 1];
        double hi = pts[i + 1];
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = std::abs(kappa(eta, x1));
        double f2 = std::abs(kappa(eta, x2));
        consider(x1, f1);
        consider(x2, f2);
        for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = std::abs(kappa(eta, x2));
                consider(x2, f2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = std::abs(kappa(eta, x1));
                consider(x1, f1);
            }
        }
    }
    return est;
}

IntegrationByPartsForms integration_by_parts_forms(const RadialMeasure& eta,
                                                   const std::function<double(double)>& f,
                                                   const std::function<double(double)>& df,
                                                   double u, const QuadratureConfig& cfg) {
    if (!(u > 0.0 && u <= 1.0)) throw DomainError("integrate_by_parts: u must lie in (0, 1]");
    IntegrationByPartsForms out;

    QuadratureResult direct = checked(
        integrate_against(eta, [&](double r) { return Complex(f(r)); }, 0.0, u, cfg),
        "integrate_by_parts (direct)");
    out.direct = direct.value;

    const Complex below_u = u >= 1.0 ? total_mass(eta) : distribution(eta, u).left;
    QuadratureResult by_parts = checked(
        integrate_dr(eta, [&](double r) { return df(r) * distribution(eta, r).right; }, 0.0, u, cfg),
        "integrate_by_parts (distribution)");
    out.distribution_form = f(u) * below_u - by_parts.value;
    out.error_estimate = direct.error_estimate + by_parts.error_estimate;

    if (u >= 1.0) {
        QuadratureResult avg = checked(
            integrate_dr(eta,
                         [&](double r) {
                             return 0.5 * (1.0 - r) * (1.0 + r) * df(r) * kappa(eta, r);
                         },
                         0.0, 1.0, cfg),
            "integrate_by_parts (averages)");
        out.averages_form = f(0.0) * distribution(eta, 1.0).right + avg.value;
        out.error_estimate += avg.error_estimate;
    }
    return out;
}

Complex integrate_by_parts(const RadialMeasure& eta, const std::function<double(double)>& f,
                           const std::function<double(double)>& df, double u,
                           const QuadratureConfig& cfg, double tol) {
    const IntegrationByPartsForms forms = integration_by_parts_forms(eta, f, df, u, cfg);
    bool agree = close_mixed(forms.direct, forms.distribution_form, tol);
    std::vector<Complex> values{forms.direct, forms.distribution_form};
    if (forms.averages_form) {
        agree = agree && close_mixed(forms.direct, *forms.averages_form, tol);
        values.push_back(*forms.averages_form);
    }
    if (!agree) {
        throw VerificationFailure("integrate_by_parts: direct, distribution and averages forms disagree",
                                  std::move(values));
    }
    return forms.direct;
}

double LipschitzKernel::value(long n, double r) {
    const double nd = static_cast<double>(n);
    return 2.0 * nd * (nd + 1.0) * std::pow(r, 2.0 * nd - 1.0) * (1.0 - r) * (1.0 + r);
}

double LipschitzKernel::antiderivative(long n, double x) {
    const double nd = static_cast<double>(n);
    const double x2n = std::pow(x, 2.0 * nd);
    return (nd + 1.0) * x2n - nd * x2n * x * x;
}

double LipschitzKernel::crossing(long n) {
    const double nd = static_cast<double>(n);
    return std::sqrt(nd / (nd + 2.0));
}

double lip_kernel_integral(long n) {
    if (n < 1) throw DomainError("lip_kernel_integral: n must be >= 1");
    const double nd = static_cast<double>(n);
    return std::exp(std::log(8.0) + std::log(nd + 1.0) + nd * std::log(nd) -
                    (nd + 2.0) * std::log(nd + 2.0));
}

double lip_kernel_integral_numeric(long n, const QuadratureConfig& cfg) {
    if (n < 1) throw DomainError("lip_kernel_integral_numeric: n must be >= 1");
    const double split = LipschitzKernel::crossing(n);
    std::vector<double> breaks = normalize_breaks(geometric_breaks(cfg.geometric_levels), 0.0, 1.0);
    breaks.push_back(split);
    breaks = normalize_breaks(std::move(breaks), 0.0, 1.0);
    auto f = [&](double r) {
        return std::abs(LipschitzKernel::value(n + 1, r) - LipschitzKernel::value(n, r));
    };
    return integrate_panels(f, breaks, cfg).value.real();
}

}  // namespace bergman
