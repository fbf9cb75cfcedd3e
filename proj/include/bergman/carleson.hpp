#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bergman/measure.hpp"

namespace bergman {

/// |log(m+1) - log(n+1)|
double d_log(std::uint64_t m, std::uint64_t n);

struct LogGap {
    double lhs;  ///< 1/(m+1)
    double rhs;  ///< log(m+1) - log(m)
};

LogGap log_gap_bound(std::uint64_t m);

struct MOfS {
    long m;
    double value;  ///< (1 - s^2)(m+1) s^{2m}
};

/// m = floor(1 / (2(1 - s))) for s in [3/4, 1); the value exceeds 1/4.
MOfS m_of_s(double s);

struct GridConfig {
    long gamma_horizon = 4096;
    int geometric_levels = 40;
    int uniform_points = 1000;
    std::vector<double> a_grid;  ///< empty means default_a_grid()
    unsigned workers = 1;
};

enum class Verdict { bounded, unbounded, inconclusive };

const char* to_string(Verdict v);

struct ChainSlack {
    double beta_minus_gamma = 0.0;
    double gamma_minus_kappa = 0.0;
    double kappa_minus_five_gamma = 0.0;
};

struct CarlesonReport {
    double kappa_sup = 0.0;
    double kappa_argmax = 0.0;
    /// max |kappa| over the last decade of geometric levels divided by the
    /// max over the previous decade.
    double kappa_growth_ratio = 1.0;
    bool kappa_growing = false;
    double gamma_sup = 0.0;
    long gamma_argmax = 0;
    double beta_sup = 0.0;
    ChainSlack slack;
    Verdict verdict = Verdict::inconclusive;
    bool positive = true;  ///< chain applies only to positivity-certified measures
    /// max over grid points s >= 3/4 with m(s) <= horizon of kappa(s) - 4 gamma(m(s)).
    double case_four_slack = 0.0;
    long horizon = 0;
    /// Verdicts of the Jordan parts when the measure is not certified positive.
    std::vector<std::pair<std::string, Verdict>> parts;

    /// Chain beta <= gamma <= kappa <= 5 gamma within tol (true if it does not apply).
    bool chain_holds(double tol) const;
};

CarlesonReport carleson_report(const RadialMeasure& eta, const GridConfig& grids = {});

struct LipschitzReport {
    double empirical_modulus = 0.0;
    double kappa_sup = 0.0;
    double bound = 0.0;  ///< 8 * kappa_sup
    bool pass = false;
    long horizon = 0;
    std::pair<long, long> worst_pair{0, 0};
    /// max over n < N of |gamma(n+1) - gamma(n)| - 8 kappa_sup (log(n+2) - log(n+1)).
    double stepwise_slack = 0.0;
};

/// Fixed seed of the random pair sampler.
inline constexpr std::uint64_t kLipschitzSeed = 0x5eed'b1e5'5eedULL;

/// Empirical d_log-Lipschitz modulus of gamma over adjacent pairs n < N plus
/// `random_pairs` pairs from a fixed-seed generator.
LipschitzReport lipschitz_report(const RadialMeasure& eta, long horizon, int random_pairs = 10000,
                                 const GridConfig& grids = {});

}  // namespace bergman
