#include "selftest/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "bergman/berezin.hpp"
#include "bergman/carleson.hpp"
#include "bergman/dsl.hpp"
#include "bergman/gram.hpp"
#include "bergman/spectral.hpp"
#include "selftest/suite.hpp"

namespace bergman::selftest {

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Tracks the worst observed deviation against a tolerance and remembers where it happened.
class Worst {
public:
    explicit Worst(double tol) : tol_(tol) {}

    void see(double deviation, const std::string& where) {
        if (!(deviation <= worst_)) {
            worst_ = deviation;
            where_ = where;
        }
    }
    // |x - y| / (1 + max(|x|, |y|))
    void mixed(Complex x, Complex y, const std::string& where) {
        see(std::abs(x - y) / (1.0 + std::max(std::abs(x), std::abs(y))), where);
    }
    // Relative error, with the scale floored at the smallest normal double so
    // that references in the subnormal range are judged by absolute spacing.
    void relative(Complex x, Complex ref, const std::string& where) {
        const double scale = std::max(std::abs(ref), std::numeric_limits<double>::min());
        see(std::abs(x - ref) / scale, where);
    }

    bool ok() const { return worst_ <= tol_; }
    double value() const { return worst_; }
    std::string summary(const std::string& label) const {
        std::string s = label + " worst " + sci(worst_) + " (tol " + sci(tol_) + ")";
        if (!ok()) s += " at " + where_;
        return s;
    }

private:
    double tol_;
    double worst_ = 0.0;
    std::string where_;
};

struct Outcome {
    bool pass = true;
    std::string detail;

    void add(bool ok, const std::string& text) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += text;
    }
};

std::string label(const std::string& measure, const char* what, double at) {
    return measure + " " + what + "=" + sci(at);
}

Outcome identity_measure() {
    Outcome out;
    const RadialMeasure eta = MeasurePrimitive::lebesgue();
    Worst g(1e-12), b(1e-8), k(1e-12);
    for (long n = 0; n <= 500; ++n) g.see(std::abs(gamma(eta, n) - 1.0), "n=" + std::to_string(n));
    for (double a : default_a_grid()) {
        b.see(std::abs(beta_direct(eta, a).value - 1.0), "direct a=" + sci(a));
        b.see(std::abs(beta_series(eta, a).value - 1.0), "series a=" + sci(a));
        b.see(std::abs(beta_via_averages(eta, a).value - 1.0), "averages a=" + sci(a));
    }
    const KappaSupEstimate est = kappa_sup_estimate(eta);
    for (double r : est.grid) k.see(std::abs(kappa(eta, r) - 1.0), "r=" + sci(r));
    out.add(g.ok(), g.summary("gamma"));
    out.add(b.ok(), b.summary("beta"));
    out.add(k.ok(), k.summary("kappa on " + std::to_string(est.grid.size()) + " points"));
    return out;
}

Outcome dirac_closed_forms() {
    Outcome out;
    Worst g(1e-12), b(1e-12);
    for (double x : {0.1, 0.5, 0.9, 0.99}) {
        const RadialMeasure eta = MeasurePrimitive::dirac(x);
        const long double x2 = static_cast<long double>(x) * x;
        long double power = 1.0L;  // x^{2n} by repeated multiplication in extended precision
        for (long n = 0; n <= 1000; ++n) {
            const double ref = static_cast<double>(2.0L * (n + 1) * power);
            g.relative(gamma(eta, n), ref, label("x=" + sci(x), "n", static_cast<double>(n)));
            power *= x2;
        }
        for (double a : default_a_grid()) {
            const double ax2 = a * a * x * x;
            const double om = (1.0 - a) * (1.0 + a);
            const double ref = 2.0 * om * om * (1.0 + ax2) / std::pow(1.0 - ax2, 3);
            b.mixed(beta_direct(eta, a).value, ref, label("x=" + sci(x), "a", a));
        }
    }
    out.add(g.ok(), g.summary("gamma relative"));
    out.add(b.ok(), b.summary("beta_direct"));
    return out;
}

Outcome cross_formula() {
    Outcome out;
    Worst g(1e-8), b(1e-8);
    for (const SuiteMeasure& s : measure_suite()) {
        for (long n = 1; n <= 64; ++n) {
            const Complex ref = gamma(s.measure, n);
            const std::string where = label(s.name, "n", static_cast<double>(n));
            g.mixed(gamma_via_distribution(s.measure, n).value, ref, where);
            g.mixed(gamma_via_averages(s.measure, n).value, ref, where);
        }
        for (double a : default_a_grid()) {
            const Complex ref = beta_direct(s.measure, a).value;
            const std::string where = label(s.name, "a", a);
            b.mixed(beta_series(s.measure, a).value, ref, where);
            b.mixed(beta_via_averages(s.measure, a).value, ref, where);
        }
    }
    out.add(g.ok(), g.summary("gamma routes"));
    out.add(b.ok(), b.summary("beta routes"));
    return out;
}

Outcome residue_lemma() {
    Outcome out;
    Worst w(1e-10);
    for (int i = 0; i <= 9; ++i) {
        const double a = i / 10.0;
        const double om = 1.0 - a * a;
        const double ref = (1.0 + a * a) / (om * om * om);
        w.mixed(circle_kernel_integral(a, 1024).numeric, ref, "a=" + sci(a));
    }
    out.add(w.ok(), w.summary("circle kernel"));
    return out;
}

Outcome oracle_diagonality() {
    Outcome out;
    constexpr int big = 64;
    constexpr int small = 16;
    bool exact_ok = true;
    double worst_off = 0.0;
    double worst_diag = 0.0;
    std::string failing;
    Worst quad(1e-8);
    for (const SuiteMeasure& s : measure_suite()) {
        const TruncatedOperator op = gram_matrix(s.measure, big, 2 * big + 2);
        const SpectralSequence seq = gamma_range(s.measure, 0, big - 1);
        const DiagonalReport rep = diagonal_report(op, seq);
        worst_off = std::max(worst_off, rep.max_off_diagonal);
        worst_diag = std::max(worst_diag, rep.max_diagonal_error);
        if (!rep.pass) {
            exact_ok = false;
            failing += " " + s.name;
        }
        if (s.has_atoms) continue;
        const TruncatedOperator exact = gram_matrix(s.measure, small, 2 * small + 2);
        const TruncatedOperator numeric = gram_matrix_quadrature(s.measure, small);
        for (int j = 0; j < small; ++j) {
            for (int k = 0; k < small; ++k) {
                quad.mixed(numeric.entries(j, k), exact.entries(j, k),
                           s.name + " (" + std::to_string(j) + "," + std::to_string(k) + ")");
            }
        }
    }
    out.add(exact_ok, "exact N=64: max off-diagonal " + sci(worst_off) + ", max diagonal error " +
                          sci(worst_diag) + (exact_ok ? "" : ", failing:" + failing));
    out.add(quad.ok(), quad.summary("quadrature N=16 vs exact"));

    // Negative controls: a perturbed off-diagonal entry and a perturbed diagonal entry.
    const RadialMeasure eta = MeasurePrimitive::lebesgue();
    const SpectralSequence seq = gamma_range(eta, 0, big - 1);
    TruncatedOperator off = gram_matrix(eta, big, 2 * big + 2);
    off.entries(3, 7) += 1e-9;
    TruncatedOperator diag = gram_matrix(eta, big, 2 * big + 2);
    diag.entries(5, 5) += 1e-9;
    const bool caught = !diagonal_report(off, seq).pass && !diagonal_report(diag, seq).pass;
    out.add(caught, caught ? "corrupted entries detected" : "corrupted entry NOT detected");
    return out;
}

Outcome disk_radiality() {
    Outcome out;
    Worst spread(1e-8), agree(1e-6);
    PolarGrid grid;
    for (const SuiteMeasure& s : measure_suite()) {
        if (s.has_atoms) continue;
        for (double rho : {0.3, 0.6, 0.9}) {
            Complex lo{}, mean{};
            double max_dev = 0.0;
            std::vector<Complex> vals;
            for (int k = 0; k < 16; ++k) {
                const Complex w = std::polar(rho, 2.0 * std::numbers::pi * k / 16.0);
                vals.push_back(berezin_disk_oracle(s.measure, w, grid).value);
                mean += vals.back() / 16.0;
            }
            lo = vals.front();
            for (const Complex& v : vals) max_dev = std::max(max_dev, std::abs(v - lo));
            spread.see(max_dev, label(s.name, "|w|", rho));
            agree.mixed(mean, beta_direct(s.measure, rho).value, label(s.name, "|w|", rho));
        }
    }
    out.add(spread.ok(), spread.summary("angular spread"));
    out.add(agree.ok(), agree.summary("oracle vs beta_direct"));
    return out;
}

Outcome norm_chain(unsigned workers) {
    Outcome out;
    GridConfig grids;
    grids.workers = workers;
    int checked = 0;
    double worst = -INFINITY;
    std::string failing;
    for (const SuiteMeasure& s : measure_suite()) {
        if (!s.measure.positivity_certified() || !s.bounded_kappa) continue;
        const CarlesonReport rep = carleson_report(s.measure, grids);
        ++checked;
        worst = std::max({worst, rep.slack.beta_minus_gamma, rep.slack.gamma_minus_kappa,
                          rep.slack.kappa_minus_five_gamma});
        if (rep.verdict != Verdict::bounded || !rep.chain_holds(1e-7)) {
            failing += " " + s.name + "(" + to_string(rep.verdict) + ")";
        }
    }
    const bool ok = failing.empty() && checked > 0;
    out.add(ok, std::to_string(checked) + " measures, worst slack " + sci(worst) +
                    (ok ? "" : ", failing:" + failing));
    return out;
}

Outcome m_of_s_lemma() {
    Outcome out;
    double min_value = INFINITY;
    double at = 0.0;
    bool threw = false;
    constexpr int points = 1000;
    for (int i = 0; i < points; ++i) {
        const double s = 0.75 + (0.999 - 0.75) * i / (points - 1);
        const double q = 1.0 / (2.0 * (1.0 - s));
        try {
            const MOfS r = m_of_s(s);
            // m is the floor of q, up to snapping of decimal inputs that land just below an integer.
            const bool floor_ok = static_cast<double>(r.m) <= q * (1.0 + 1e-9) && static_cast<double>(r.m) > q - 1.0;
            const double independent =
                (1.0 - s * s) * static_cast<double>(r.m + 1) * std::pow(s, 2.0 * static_cast<double>(r.m));
            if (!floor_ok || std::abs(r.value - independent) > 1e-12) threw = true;
            if (r.value < min_value) {
                min_value = r.value;
                at = s;
            }
        } catch (const std::exception&) {
            threw = true;
        }
    }
    out.add(!threw && min_value > 0.25, "min over grid " + sci(min_value) + " at s=" + sci(at));
    const double checkpoint = (7.0 / 8.0) * std::pow(0.75, 4);
    const bool cp = checkpoint == 567.0 / 2048.0 && checkpoint > 0.25;
    out.add(cp, "checkpoint (7/8)(3/4)^4 = " + sci(checkpoint) + (cp ? " = 567/2048" : " MISMATCH"));
    return out;
}

Outcome lipschitz(unsigned workers) {
    Outcome out;
    Worst kernel(1e-9);
    for (long n = 1; n <= 50; ++n) {
        const long double nl = n;
        const long double ref =
            8.0L * (nl + 1) * std::exp(nl * std::log(nl) - (nl + 2) * std::log(nl + 2));
        kernel.mixed(lip_kernel_integral_numeric(n), static_cast<double>(ref), "n=" + std::to_string(n));
    }
    out.add(kernel.ok(), kernel.summary("kernel integral"));

    constexpr long horizon = 2000;
    GridConfig grids;
    grids.workers = workers;
    double worst_step = -INFINITY;
    std::string failing;
    for (const SuiteMeasure& s : measure_suite()) {
        if (!s.bounded_kappa) continue;
        const double ksup = kappa_sup_estimate(s.measure).value;
        for (long n = 0; n + 1 < horizon; ++n) {
            const double step = std::abs(gamma(s.measure, n + 1) - gamma(s.measure, n));
            const double allowed = 8.0 * ksup * (std::log(n + 2.0) - std::log(n + 1.0)) + 1e-9;
            worst_step = std::max(worst_step, step - allowed);
        }
        const LipschitzReport rep = lipschitz_report(s.measure, horizon, 10000, grids);
        if (!rep.pass) failing += " " + s.name;
    }
    out.add(worst_step <= 0.0, "stepwise worst slack " + sci(worst_step));
    out.add(failing.empty(), failing.empty() ? "d_log modulus <= 8 kappa_sup on all bounded measures"
                                             : "modulus exceeded:" + failing);
    return out;
}

Outcome unbounded_detection(unsigned workers) {
    Outcome out;
    const RadialMeasure eta = dsl::parse_measure("jacobi(-0.5,0)");
    GridConfig grids;
    grids.workers = workers;
    const CarlesonReport rep = carleson_report(eta, grids);
    out.add(rep.verdict == Verdict::unbounded, std::string("verdict ") + to_string(rep.verdict));
    const double ratio = std::abs(gamma(eta, 1024)) / std::abs(gamma(eta, 512));
    const bool near = std::abs(ratio / std::numbers::sqrt2 - 1.0) <= 0.1;
    out.add(near && ratio > 1.0, "gamma(1024)/gamma(512) = " + sci(ratio));
    return out;
}

Outcome parser_checks(const CliRunner& cli) {
    Outcome out;
    // Totality under fuzzing: random bytes and random token soup.
    std::mt19937_64 rng(0x9a75e5eedULL);
    static const char* pieces[] = {"dirac", "lebesgue", "poly", "jacobi", "i", "(", ")", "[", "]",
                                   ",", "+", "-", "*", "0", "0.5", "1", "2", "-1", "1e-3", "1e999",
                                   ".25", " ", "\n", "x", "$", "e"};
    constexpr int cases = 100000;
    int crashes = 0;
    int accepted = 0;
    int unstable = 0;
    std::string first_crash;
    for (int i = 0; i < cases; ++i) {
        std::string text;
        const int len = static_cast<int>(rng() % 48);
        if (i % 2 == 0) {
            for (int k = 0; k < len; ++k) text.push_back(static_cast<char>(rng() % 256));
        } else {
            for (int k = 0; k < len; ++k) text += pieces[rng() % std::size(pieces)];
        }
        try {
            const dsl::ParseResult r = dsl::parse(text);
            if (r.ok()) {
                ++accepted;
                (void)dsl::elaborate(*r.ast);
                const dsl::ParseResult again = dsl::parse(dsl::print(*r.ast));
                if (!again.ok() || !dsl::same_structure(*again.ast, *r.ast)) ++unstable;
            } else if (r.diagnostics.empty()) {
                throw std::logic_error("rejected without diagnostics");
            }
        } catch (const std::exception& e) {
            if (crashes++ == 0) first_crash = e.what();
        }
    }
    out.add(crashes == 0 && unstable == 0,
            std::to_string(cases) + " fuzz inputs, " + std::to_string(accepted) + " accepted, " +
                std::to_string(crashes) + " crashes, " + std::to_string(unstable) + " unstable" +
                (first_crash.empty() ? "" : " (" + first_crash + ")"));

    int round_trip_failures = 0;
    for (const std::string& s : valid_corpus()) {
        const dsl::ParseResult a = dsl::parse(s);
        if (!a.ok()) {
            ++round_trip_failures;
            continue;
        }
        const dsl::ParseResult b = dsl::parse(dsl::print(*a.ast));
        if (!b.ok() || !dsl::same_structure(*a.ast, *b.ast) || dsl::print(*b.ast) != dsl::print(*a.ast)) {
            ++round_trip_failures;
        }
    }
    out.add(round_trip_failures == 0, "round-trip on " + std::to_string(valid_corpus().size()) +
                                          " corpus inputs, " + std::to_string(round_trip_failures) +
                                          " failures");

    struct Expected {
        const char* spec;
        dsl::DiagnosticKind kind;
        dsl::Span span;
    };
    const Expected examples[] = {
        {"dirac(1.0)", dsl::DiagnosticKind::domain_violation, {1, 7, 3}},
        {"dirac(2)", dsl::DiagnosticKind::domain_violation, {1, 7, 1}},
        {"jacobi(-1, 0)", dsl::DiagnosticKind::domain_violation, {1, 8, 2}},
    };
    int diag_failures = 0;
    for (const Expected& e : examples) {
        const dsl::ParseResult r = dsl::parse(e.spec);
        const bool span_ok = !r.ok() && r.diagnostics.size() == 1 && r.diagnostics[0].kind == e.kind &&
                             r.diagnostics[0].span == e.span;
        std::ostringstream o, err;
        const int code = cli({"gamma", "--measure", e.spec, "--n-max", "3"}, o, err);
        const std::string where = std::to_string(e.span.line) + ":" + std::to_string(e.span.column) + ":";
        const bool cli_ok = code == 2 && o.str().empty() && err.str().find(where) != std::string::npos;
        if (!span_ok || !cli_ok) ++diag_failures;
    }
    out.add(diag_failures == 0,
            "diagnostic examples: " + std::to_string(3 - diag_failures) + "/3 exit 2 with correct span");
    return out;
}

Outcome complex_linearity() {
    Outcome out;
    const auto& suite = measure_suite();
    auto find = [&](const std::string& name) -> const RadialMeasure& {
        for (const auto& s : suite) {
            if (s.name == name) return s.measure;
        }
        throw std::logic_error("suite measure missing: " + name);
    };
    const RadialMeasure& e1 = find("lebesgue");
    const RadialMeasure& e2 = find("atom-0.5");
    const RadialMeasure& e3 = find("jacobi-half");
    const RadialMeasure& e4 = find("quadratic-band");
    const Complex i(0.0, 1.0);
    const RadialMeasure eta = e1 - e2 + i * (e3 - e4);

    Worst g(1e-12), m(1e-12);
    for (long n = 0; n <= 1000; ++n) {
        const Complex combo = gamma(e1, n) - gamma(e2, n) + i * (gamma(e3, n) - gamma(e4, n));
        g.mixed(gamma(eta, n), combo, "n=" + std::to_string(n));
    }
    constexpr int dim = 64;
    constexpr int nodes = 2 * dim + 2;
    const Eigen::MatrixXcd combo = gram_matrix(e1, dim, nodes).entries - gram_matrix(e2, dim, nodes).entries +
                                   i * (gram_matrix(e3, dim, nodes).entries - gram_matrix(e4, dim, nodes).entries);
    const Eigen::MatrixXcd direct = gram_matrix(eta, dim, nodes).entries;
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) {
            m.mixed(direct(j, k), combo(j, k), "(" + std::to_string(j) + "," + std::to_string(k) + ")");
        }
    }
    out.add(g.ok(), g.summary("gamma"));
    out.add(m.ok(), m.summary("gram N=64"));

    // The Jordan split of a complex measure recombines to the same eigenvalues.
    const JordanParts parts = jordan_decompose(find("complex-mix"));
    const RadialMeasure back = parts.recombine();
    Worst j(1e-12);
    for (long n = 0; n <= 200; ++n) {
        j.mixed(gamma(back, n), gamma(find("complex-mix"), n), "n=" + std::to_string(n));
    }
    out.add(j.ok(), j.summary("jordan recombination"));
    return out;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const CliRunner& cli, unsigned workers) {
    struct Spec {
        int id;
        const char* name;
        double limit;
        std::function<Outcome()> body;
    };
    const std::vector<Spec> specs = {
        {1, "identity measure", 1.0, identity_measure},
        {2, "dirac closed forms", 1.0, dirac_closed_forms},
        {3, "cross-formula agreement", 30.0, cross_formula},
        {4, "residue lemma", 1.0, residue_lemma},
        {5, "oracle diagonality", 60.0, oracle_diagonality},
        {6, "disk-oracle radiality", 30.0, disk_radiality},
        {7, "norm chain", 30.0, [workers] { return norm_chain(workers); }},
        {8, "m(s) lemma", 1.0, m_of_s_lemma},
        {9, "lipschitz kernel", 30.0, [workers] { return lipschitz(workers); }},
        {10, "unbounded detection", 5.0, [workers] { return unbounded_detection(workers); }},
        {11, "parser", 30.0, [&cli] { return parser_checks(cli); }},
        {12, "complex-measure linearity", 10.0, complex_linearity},
    };
    std::vector<CriterionResult> results;
    for (const Spec& spec : specs) {
        CriterionResult r;
        r.id = spec.id;
        r.name = spec.name;
        r.limit_seconds = spec.limit;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = spec.body();
        } catch (const std::exception& e) {
            o.add(false, std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = r.seconds < spec.limit;
        if (!in_time) o.add(false, "over time budget");
        r.pass = o.pass;
        r.detail = o.detail;
        results.push_back(std::move(r));
    }
    return results;
}

void print_results(std::ostream& out, const std::vector<CriterionResult>& results) {
    char buf[96];
    for (const CriterionResult& r : results) {
        std::snprintf(buf, sizeof buf, "%s %2d %s (%.2f s / %g s): ", r.pass ? "PASS" : "FAIL", r.id,
                      r.name.c_str(), r.seconds, r.limit_seconds);
        out << buf << r.detail << '\n';
    }
}

}  // namespace bergman::selftest
