#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bergman/measure.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

enum class GammaMethod { moments, distribution, averages };

const char* to_string(GammaMethod m);

/// gamma_eta(n) = 2(n+1) * integral of r^{2n} d eta: the n-th eigenvalue of the
/// radial Toeplitz operator in the canonical basis.
Complex gamma(const RadialMeasure& eta, long n);

/// gamma_eta(0) = 2 eta([0, 1)).
Complex gamma0(const RadialMeasure& eta);

/// gamma_eta(n) = 2(n+1) eta([0,1)) - 4n(n+1) int_0^1 F(r) r^{2n-1} dr, n >= 1.
QuadratureResult gamma_via_distribution(const RadialMeasure& eta, long n,
                                        const QuadratureConfig& cfg = {});

/// gamma_eta(n) = 2n(n+1) int_0^1 kappa(r) r^{2n-1} (1 - r^2) dr. n = 0 returns gamma0.
QuadratureResult gamma_via_averages(const RadialMeasure& eta, long n,
                                    const QuadratureConfig& cfg = {});

struct SpectralSequence {
    long first = 0;
    std::vector<Complex> values;
    GammaMethod method = GammaMethod::moments;
    RadialMeasure measure;
    /// Largest quadrature error estimate over the range (0 for moments).
    double error_estimate = 0.0;

    long last() const { return first + static_cast<long>(values.size()) - 1; }
    const Complex& at(long n) const { return values.at(static_cast<std::size_t>(n - first)); }
};

/// gamma over [n0, n1]. Entries are independent, so the result is bit-identical
/// for any worker count. Quadrature routes send n = 0 to gamma0.
SpectralSequence gamma_range(const RadialMeasure& eta, long n0, long n1,
                             GammaMethod method = GammaMethod::moments,
                             const QuadratureConfig& cfg = {}, unsigned workers = 1);

/// kappa_eta(r) = 2 eta([r,1)) / (1 - r^2), r in [0, 1).
Complex kappa(const RadialMeasure& eta, double r);

struct KappaSupEstimate {
    double value = 0.0;  ///< max |kappa| over the evaluated points
    double argmax = 0.0;
    std::vector<double> grid;  ///< sorted evaluation points before refinement
    std::vector<double> magnitudes;
};

/// Sup of |kappa| on a boundary-refining grid: uniform points, 1 - 2^-j,
/// atoms and breakpoints, then golden-section refinement of the top local maxima.
KappaSupEstimate kappa_sup_estimate(const RadialMeasure& eta, int uniform_points = 1000,
                                    int geometric_levels = 40);

/// kappa_eta evaluated on demand, with its sup estimate computed once at construction.
class AverageFunction {
public:
    explicit AverageFunction(RadialMeasure eta, int uniform_points = 1000,
                             int geometric_levels = 40)
        : eta_(std::move(eta)), sup_(kappa_sup_estimate(eta_, uniform_points, geometric_levels)) {}

    Complex operator()(double r) const { return kappa(eta_, r); }
    const RadialMeasure& measure() const noexcept { return eta_; }
    const KappaSupEstimate& sup_estimate() const noexcept { return sup_; }

private:
    RadialMeasure eta_;
    KappaSupEstimate sup_;
};

/// The three expressions of int_{[0,u)} f d eta.
struct IntegrationByPartsForms {
    Complex direct;
    Complex distribution_form;
    std::optional<Complex> averages_form;  ///< only for u = 1
    double error_estimate = 0.0;
};

IntegrationByPartsForms integration_by_parts_forms(const RadialMeasure& eta,
                                                   const std::function<double(double)>& f,
                                                   const std::function<double(double)>& df,
                                                   double u, const QuadratureConfig& cfg = {});

/// Returns the direct value of int_{[0,u)} f d eta after checking it against
/// the distribution and (for u = 1) averages forms. Throws VerificationFailure
/// carrying all values when they disagree beyond `tol` (mixed abs/rel).
Complex integrate_by_parts(const RadialMeasure& eta, const std::function<double(double)>& f,
                           const std::function<double(double)>& df, double u,
                           const QuadratureConfig& cfg = {}, double tol = 1e-8);

/// Kernel of the averages formula, L(n, r) = 2n(n+1) r^{2n-1} (1 - r^2).
struct LipschitzKernel {
    static double value(long n, double r);
    /// Antiderivative from 0: (n+1) x^{2n} - n x^{2n+2}.
    static double antiderivative(long n, double x);
    /// Sign change of L(n+1, .) - L(n, .): sqrt(n / (n + 2)).
    static double crossing(long n);
};

/// int_0^1 |L(n+1,r) - L(n,r)| dr = 8(n+1) n^n / (n+2)^{n+2}, in log space.
double lip_kernel_integral(long n);

/// The same integral by quadrature, split at the sign change.
double lip_kernel_integral_numeric(long n, const QuadratureConfig& cfg = {});

/// |x - y| <= tol * (1 + max(|x|, |y|)).
bool close_mixed(Complex x, Complex y, double tol);

}  // namespace bergman
