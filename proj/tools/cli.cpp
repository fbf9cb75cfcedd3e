#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "bergman/berezin.hpp"
#include "bergman/carleson.hpp"
#include "bergman/csv.hpp"
#include "bergman/dsl.hpp"
#include "bergman/errors.hpp"
#include "bergman/gram.hpp"
#include "bergman/spectral.hpp"
#include "selftest/acceptance.hpp"

namespace bergman::cli {

namespace {

using csv::format_real;
using nlohmann::json;

struct Options {
    std::string measure;
    long n_max = -1;
    std::string method;
    std::string grid = "uniform:100";
    std::string a_grid;
    bool json_out = false;
    int pairs = 10000;
    long max_terms = SeriesOptions{}.max_terms;
    int dim = 0;
    std::string path = "exact";
    bool dump = false;
    unsigned workers = 1;
};

// Thrown for bad flag values that CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

void print_diagnostic(std::ostream& err, const std::string& source, const dsl::Diagnostic& d) {
    err << "error: " << d.format() << '\n';
    // Echo the offending line with a caret underline.
    std::istringstream lines(source);
    std::string line;
    for (int i = 0; i < d.span.line && std::getline(lines, line); ++i) {
    }
    err << "  " << line << '\n';
    err << "  " << std::string(static_cast<std::size_t>(std::max(0, d.span.column - 1)), ' ')
        << std::string(static_cast<std::size_t>(std::max(1, d.span.length)), '^') << '\n';
}

RadialMeasure load(const std::string& spec) { return dsl::parse_measure(spec); }

void flags_line(std::ostream& out, const std::string& command,
                const std::vector<std::pair<std::string, std::string>>& flags) {
    out << "# " << command;
    for (const auto& [k, v] : flags) out << ' ' << k << '=' << v;
    out << '\n';
}

std::string quoted(const std::string& s) { return "\"" + one_line(s) + "\""; }

std::vector<double> parse_grid_spec(const std::string& spec, bool allow_list) {
    std::vector<double> pts;
    const auto colon = spec.find(':');
    auto count = [&](const std::string& text) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(text, &used);
        } catch (const std::exception&) {
            throw UsageError("grid size must be an integer: '" + text + "'");
        }
        if (used != text.size() || v < 1 || v > 10'000'000) {
            throw UsageError("grid size must be an integer in [1, 1e7]: '" + text + "'");
        }
        return v;
    };
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        const long n = count(spec.substr(colon + 1));
        if (kind == "uniform") {
            for (long i = 0; i < n; ++i) pts.push_back(static_cast<double>(i) / static_cast<double>(n));
            return pts;
        }
        if (kind == "geometric") {
            if (n > 52) throw UsageError("geometric grid depth must be <= 52");
            for (long j = 0; j <= n; ++j) pts.push_back(1.0 - std::ldexp(1.0, static_cast<int>(-j)));
            return pts;
        }
        throw UsageError("unknown grid kind '" + kind + "' (use uniform:M or geometric:J)");
    }
    if (!allow_list) throw UsageError("grid must be uniform:M or geometric:J");
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("a-grid entries must be numbers: '" + item + "'");
        }
        if (used != item.size() || !(v >= 0.0 && v < 1.0)) {
            throw UsageError("a-grid entries must lie in [0, 1): '" + item + "'");
        }
        pts.push_back(v);
    }
    if (pts.empty()) throw UsageError("empty a-grid");
    return pts;
}

template <class E>
std::vector<E> methods_from(const std::string& name, const std::vector<std::pair<std::string, E>>& all) {
    if (name == "all") {
        std::vector<E> out;
        for (const auto& [n, m] : all) out.push_back(m);
        return out;
    }
    for (const auto& [n, m] : all) {
        if (n == name) return {m};
    }
    throw UsageError("unknown method '" + name + "'");
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

int cmd_gamma(const Options& o, std::ostream& out) {
    const RadialMeasure eta = load(o.measure);
    const std::string method = o.method.empty() ? "moments" : o.method;
    const auto methods = methods_from<GammaMethod>(
        method, {{"moments", GammaMethod::moments},
                   {"distribution", GammaMethod::distribution},
                   {"averages", GammaMethod::averages}});
    std::vector<SpectralSequence> seqs;
    for (GammaMethod m : methods) seqs.push_back(gamma_range(eta, 0, o.n_max, m, {}, o.workers));
    const bool tagged = method == "all";
    flags_line(out, "gamma", {{"measure", quoted(o.measure)}, {"n-max", std::to_string(o.n_max)},
                              {"method", method}});
    out << (tagged ? "n,re,im,method\n" : "n,re,im\n");
    for (long n = 0; n <= o.n_max; ++n) {
        for (const SpectralSequence& s : seqs) {
            out << n << ',';
            csv::write_complex(out, s.at(n));
            if (tagged) out << ',' << to_string(s.method);
            out << '\n';
        }
    }
    return kSuccess;
}

int cmd_kappa(const Options& o, std::ostream& out) {
    const RadialMeasure eta = load(o.measure);
    const std::vector<double> grid = parse_grid_spec(o.grid, false);
    flags_line(out, "kappa", {{"measure", quoted(o.measure)}, {"grid", o.grid}});
    out << "r,re,im\n";
    for (double r : grid) {
        out << format_real(r) << ',';
        csv::write_complex(out, kappa(eta, r));
        out << '\n';
    }
    return kSuccess;
}

int cmd_berezin(const Options& o, std::ostream& out) {
    const RadialMeasure eta = load(o.measure);
    const std::string method = o.method.empty() ? "direct" : o.method;
    const auto methods = methods_from<BerezinMethod>(
        method, {{"direct", BerezinMethod::direct},
                   {"series", BerezinMethod::series},
                   {"averages", BerezinMethod::averages}});
    const std::vector<double> grid = o.a_grid.empty() ? default_a_grid() : parse_grid_spec(o.a_grid, true);
    std::vector<BerezinProfile> profiles;
    bool certified = true;
    for (BerezinMethod m : methods) {
        SeriesOptions series;
        series.max_terms = o.max_terms;
        profiles.push_back(berezin_profile(eta, grid, m, {}, series));
        certified = certified && profiles.back().all_certified;
    }
    const bool tagged = method == "all";
    flags_line(out, "berezin", {{"measure", quoted(o.measure)}, {"method", method},
                                {"a-grid", o.a_grid.empty() ? "default" : o.a_grid},
                                {"max-terms", std::to_string(o.max_terms)}});
    if (!certified) out << "# uncertified: some a exceed " << "0.99" << '\n';
    out << (tagged ? "a,re,im,method\n" : "a,re,im\n");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (const BerezinProfile& p : profiles) {
            out << format_real(grid[i]) << ',';
            csv::write_complex(out, p.values[i]);
            if (tagged) out << ',' << to_string(p.method);
            out << '\n';
        }
    }
    return kSuccess;
}

int cmd_check(const Options& o, std::ostream& out) {
    const RadialMeasure eta = load(o.measure);
    GridConfig grids;
    if (o.n_max >= 0) grids.gamma_horizon = o.n_max;
    grids.workers = o.workers;
    const CarlesonReport rep = carleson_report(eta, grids);
    constexpr double chain_tol = 1e-7;
    const bool holds = rep.chain_holds(chain_tol);
    if (o.json_out) {
        json parts = json::array();
        for (const auto& [name, v] : rep.parts) parts.push_back({{"part", name}, {"verdict", to_string(v)}});
        json j = {
            {"report", "carleson"},
            {"measure", o.measure},
            {"positive", rep.positive},
            {"verdict", to_string(rep.verdict)},
            {"kappa_sup", number(rep.kappa_sup)},
            {"kappa_argmax", number(rep.kappa_argmax)},
            {"kappa_growth_ratio", number(rep.kappa_growth_ratio)},
            {"kappa_growing", rep.kappa_growing},
            {"gamma_sup", number(rep.gamma_sup)},
            {"gamma_argmax", rep.gamma_argmax},
            {"beta_sup", number(rep.beta_sup)},
            {"slack",
             {{"beta_minus_gamma", number(rep.slack.beta_minus_gamma)},
              {"gamma_minus_kappa", number(rep.slack.gamma_minus_kappa)},
              {"kappa_minus_five_gamma", number(rep.slack.kappa_minus_five_gamma)}}},
            {"case_four_slack", number(rep.case_four_slack)},
            {"horizon", rep.horizon},
            {"parts", parts},
            {"chain_holds", holds},
        };
        out << j.dump() << '\n';
    } else {
        out << "measure            " << one_line(o.measure) << '\n'
            << "positive           " << (rep.positive ? "yes" : "no") << '\n'
            << "verdict            " << to_string(rep.verdict) << '\n'
            << "sup |kappa|        " << format_real(rep.kappa_sup) << " at r = " << format_real(rep.kappa_argmax)
            << '\n'
            << "kappa growth ratio " << format_real(rep.kappa_growth_ratio)
            << (rep.kappa_growing ? " (growing)" : "") << '\n'
            << "sup |gamma|        " << format_real(rep.gamma_sup) << " at n = " << rep.gamma_argmax << '\n'
            << "sup |beta|         " << format_real(rep.beta_sup) << '\n'
            << "horizon            " << rep.horizon << '\n';
        if (rep.positive) {
            out << "chain slack        beta-gamma " << format_real(rep.slack.beta_minus_gamma)
                << ", gamma-kappa " << format_real(rep.slack.gamma_minus_kappa) << ", kappa-5gamma "
                << format_real(rep.slack.kappa_minus_five_gamma) << '\n'
                << "case-4 slack       " << format_real(rep.case_four_slack) << '\n';
        }
        for (const auto& [name, v] : rep.parts) out << "part " << name << "  " << to_string(v) << '\n';
        out << "chain              " << (holds ? "holds" : "VIOLATED") << '\n';
    }
    return holds ? kSuccess : kVerificationFailure;
}

int cmd_lipschitz(const Options& o, std::ostream& out) {
    const RadialMeasure eta = load(o.measure);
    GridConfig grids;
    grids.workers = o.workers;
    const LipschitzReport rep = lipschitz_report(eta, o.n_max, o.pairs, grids);
    if (o.json_out) {
        json j = {
            {"report", "lipschitz"},
            {"measure", o.measure},
            {"empirical_modulus", number(rep.empirical_modulus)},
            {"kappa_sup", number(rep.kappa_sup)},
            {"bound", number(rep.bound)},
            {"pass", rep.pass},
            {"horizon", rep.horizon},
            {"worst_pair", {rep.worst_pair.first, rep.worst_pair.second}},
            {"stepwise_slack", number(rep.stepwise_slack)},
        };
        out << j.dump() << '\n';
    } else {
        out << "measure            " << one_line(o.measure) << '\n'
            << "horizon            " << rep.horizon << '\n'
            << "empirical modulus  " << format_real(rep.empirical_modulus) << " at (" << rep.worst_pair.first
            << ", " << rep.worst_pair.second << ")\n"
            << "bound 8 sup|kappa| " << format_real(rep.bound) << '\n'
            << "stepwise slack     " << format_real(rep.stepwise_slack) << '\n'
            << "result             " << (rep.pass ? "pass" : "FAIL") << '\n';
    }
    return rep.pass ? kSuccess : kVerificationFailure;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
    const RadialMeasure eta = load(o.measure);
    TruncatedOperator op;
    DiagonalTolerance tol;
    if (o.path == "exact") {
        op = gram_matrix(eta, o.dim, 2 * o.dim + 2);
    } else if (o.path == "quadrature") {
        op = gram_matrix_quadrature(eta, o.dim);
        tol = {1e-8, 1e-8};
    } else {
        throw UsageError("unknown path '" + o.path + "' (use exact or quadrature)");
    }
    const DiagonalReport rep = diagonal_report(op, gamma_range(eta, 0, o.dim - 1, GammaMethod::moments, {}, o.workers), tol);
    if (o.dump) {
        flags_line(out, "oracle", {{"measure", quoted(o.measure)}, {"dim", std::to_string(o.dim)},
                                   {"path", o.path}});
        write_matrix_csv(out, op);
    }
    if (o.json_out) {
        json j = {
            {"report", "diagonal"},
            {"measure", o.measure},
            {"path", to_string(op.method)},
            {"dim", op.dimension()},
            {"angular_nodes", op.angular_nodes},
            {"max_off_diagonal", number(rep.max_off_diagonal)},
            {"worst_off_diagonal", {rep.worst_off_diagonal.first, rep.worst_off_diagonal.second}},
            {"off_threshold", number(rep.off_threshold)},
            {"max_diagonal_error", number(rep.max_diagonal_error)},
            {"worst_diagonal", rep.worst_diagonal},
            {"hermitian_defect", number(hermitian_defect(op))},
            {"pass", rep.pass},
        };
        (o.dump ? err : out) << j.dump() << '\n';
    } else {
        std::ostream& s = o.dump ? err : out;
        s << "path               " << to_string(op.method) << " (" << op.angular_nodes << " angles)\n"
          << "dimension          " << op.dimension() << '\n'
          << "max off-diagonal   " << format_real(rep.max_off_diagonal) << " at (" << rep.worst_off_diagonal.first
          << ", " << rep.worst_off_diagonal.second << "), threshold " << format_real(rep.off_threshold) << '\n'
          << "max diagonal error " << format_real(rep.max_diagonal_error) << " at k = " << rep.worst_diagonal
          << '\n'
          << "result             " << (rep.pass ? "diagonal" : "NOT diagonal") << '\n';
    }
    return rep.pass ? kSuccess : kVerificationFailure;
}

int cmd_selftest(const Options& o, std::ostream& out) {
    const auto results = selftest::run_acceptance(run_cli, o.workers);
    selftest::print_results(out, results);
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    out << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
    return all ? kSuccess : kVerificationFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eigenvalues, Berezin transforms and boundedness checks for radial measures on the disk"};
    app.name("bergman");
    app.require_subcommand(1);
    Options o;

    auto add_measure = [&](CLI::App* sub) {
        sub->add_option("--measure", o.measure, "measure description, e.g. \"2*dirac(0.5) + lebesgue\"")
            ->required();
        sub->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 256u));
    };
    auto* gamma_cmd = app.add_subcommand("gamma", "eigenvalue sequence gamma(n), n = 0..N, as CSV");
    add_measure(gamma_cmd);
    gamma_cmd->add_option("--n-max", o.n_max, "largest n")->required()->check(CLI::Range(0L, 10'000'000L));
    gamma_cmd->add_option("--method", o.method, "moments|distribution|averages|all")
        ->check(CLI::IsMember({"moments", "distribution", "averages", "all"}));

    auto* kappa_cmd = app.add_subcommand("kappa", "average function kappa(r) on a grid, as CSV");
    add_measure(kappa_cmd);
    kappa_cmd->add_option("--grid", o.grid, "uniform:M or geometric:J");

    auto* berezin_cmd = app.add_subcommand("berezin", "Berezin transform beta(a), as CSV");
    add_measure(berezin_cmd);
    berezin_cmd->add_option("--method", o.method, "direct|series|averages|all")
        ->check(CLI::IsMember({"direct", "series", "averages", "all"}));
    berezin_cmd->add_option("--a-grid", o.a_grid, "comma-separated radii or uniform:M");
    berezin_cmd->add_option("--max-terms", o.max_terms, "series horizon")->check(CLI::Range(1L, 1L << 30));

    auto* check_cmd = app.add_subcommand("check", "Carleson report: sups, norm chain, verdict");
    add_measure(check_cmd);
    check_cmd->add_option("--n-max", o.n_max, "gamma horizon")->check(CLI::Range(1L, 10'000'000L));
    check_cmd->add_flag("--json", o.json_out, "one JSON object instead of text");

    auto* lip_cmd = app.add_subcommand("lipschitz", "log-metric Lipschitz modulus of gamma");
    add_measure(lip_cmd);
    lip_cmd->add_option("--n-max", o.n_max, "horizon")->required()->check(CLI::Range(1L, 10'000'000L));
    lip_cmd->add_option("--pairs", o.pairs, "random pairs")->check(CLI::Range(0, 100'000'000));
    lip_cmd->add_flag("--json", o.json_out, "one JSON object instead of text");

    auto* oracle_cmd = app.add_subcommand("oracle", "truncated operator matrix and its diagonality report");
    add_measure(oracle_cmd);
    oracle_cmd->add_option("--dim", o.dim, "matrix dimension N")->required()->check(CLI::Range(1, 4096));
    oracle_cmd->add_option("--path", o.path, "exact|quadrature")->check(CLI::IsMember({"exact", "quadrature"}));
    oracle_cmd->add_flag("--dump", o.dump, "write the matrix as CSV to stdout (report goes to stderr)");
    oracle_cmd->add_flag("--json", o.json_out, "one JSON object instead of text");

    auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
    selftest_cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 256u));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*gamma_cmd) return cmd_gamma(o, out);
        if (*kappa_cmd) return cmd_kappa(o, out);
        if (*berezin_cmd) return cmd_berezin(o, out);
        if (*check_cmd) return cmd_check(o, out);
        if (*lip_cmd) return cmd_lipschitz(o, out);
        if (*oracle_cmd) return cmd_oracle(o, out, err);
        if (*selftest_cmd) return cmd_selftest(o, out);
    } catch (const dsl::ParseError& e) {
        for (const auto& d : e.diagnostics()) print_diagnostic(err, o.measure, d);
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const VerificationFailure& e) {
        err << "verification failure: " << e.what() << '\n';
        return kVerificationFailure;
    } catch (const ConvergenceError& e) {
        err << "no convergence: " << e.what() << " (achieved " << format_real(e.achieved()) << ")\n";
        return kNonConvergence;
    } catch (const RootFindingError& e) {
        err << "no convergence: " << e.what() << '\n';
        return kNonConvergence;
    }
    err << "error: no subcommand\n";
    return kUsageError;
}

}  // namespace bergman::cli
