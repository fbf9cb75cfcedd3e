#include "bergman/gram.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "bergman/csv.hpp"
#include "bergman/errors.hpp"
#include "bergman/measure_integration.hpp"

namespace bergman {

const char* to_string(GramMethod m) {
    switch (m) {
        case GramMethod::polar_exact: return "polar-exact";
        case GramMethod::polar_quadrature: return "polar-quadrature";
    }
    return "?";
}

Complex basis_eval(long k, Complex z) {
    if (k < 0) throw DomainError("basis_eval: k must be >= 0");
    const double r = std::abs(z);
    if (!(r < 1.0)) throw DomainError("basis_eval: z must lie in the open unit disk");
    const double kd = static_cast<double>(k);
    const double norm = std::sqrt((kd + 1.0) / std::numbers::pi);
    if (k == 0) return norm;
    return norm * std::polar(std::pow(r, kd), kd * std::arg(z));
}

namespace {

// (2 pi / M) sum_l e^{i m theta_l}: the M-point trapezoid value of int_T tau^m d lambda.
Complex circle_trapezoid(long m, int nodes) {
    Complex sum{};
    for (int l = 0; l < nodes; ++l) {
        // Reduce m * l mod M first so the angle stays in [0, 2 pi).
        const long phase = ((m * l) % nodes + nodes) % nodes;
        sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / nodes);
    }
    return (2.0 * std::numbers::pi / nodes) * sum;
}

void check_dimension(int dimension, int nodes) {
    if (dimension < 1) throw DomainError("gram_matrix: dimension must be >= 1");
    if (nodes < 2 * dimension + 2) {
        throw DomainError("gram_matrix: need at least 2N + 2 angular nodes (aliasing would fake diagonality)");
    }
}

}  // namespace

TruncatedOperator gram_matrix(const RadialMeasure& eta, int dimension, int angular_nodes) {
    check_dimension(dimension, angular_nodes);
    const int n = dimension;
    std::vector<Complex> moments(static_cast<std::size_t>(2 * n - 1));
    for (int s = 0; s < 2 * n - 1; ++s) moments[static_cast<std::size_t>(s)] = moment(eta, s);
    std::vector<Complex> circle(static_cast<std::size_t>(2 * n - 1));
    for (int m = -(n - 1); m <= n - 1; ++m) {
        circle[static_cast<std::size_t>(m + n - 1)] = circle_trapezoid(m, angular_nodes);
    }

    TruncatedOperator op;
    op.method = GramMethod::polar_exact;
    op.angular_nodes = angular_nodes;
    op.entries.resize(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double norm = std::sqrt(static_cast<double>(j + 1) * (k + 1)) / std::numbers::pi;
            op.entries(j, k) = norm * moments[static_cast<std::size_t>(j + k)] *
                               circle[static_cast<std::size_t>(j - k + n - 1)];
        }
    }
    return op;
}

namespace {

Eigen::MatrixXcd polar_quadrature(const std::vector<RadialNode>& nodes, int n, int angles) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd v(n);
    const double dtheta = 2.0 * std::numbers::pi / angles;
    for (const RadialNode& node : nodes) {
        Eigen::MatrixXcd ring = Eigen::MatrixXcd::Zero(n, n);
        for (int l = 0; l < angles; ++l) {
            const Complex z = std::polar(node.r, dtheta * l);
            for (int j = 0; j < n; ++j) v(j) = basis_eval(j, z);
            ring.noalias() += v * v.adjoint();
        }
        acc += (node.weight * dtheta) * ring;
    }
    return acc;
}

}  // namespace

TruncatedOperator gram_matrix_quadrature(const RadialMeasure& eta, int dimension,
                                         const GramQuadratureConfig& grid) {
    if (eta.has_atoms()) throw DomainError("gram_matrix_quadrature: atoms belong to the exact path");
    if (dimension > 64) throw DomainError("gram_matrix_quadrature: dimension must be <= 64");
    const int angles = grid.angular_nodes > 0 ? grid.angular_nodes : 2 * dimension + 2;
    check_dimension(dimension, angles);

    const Eigen::MatrixXcd coarse = polar_quadrature(density_rule(eta, grid.radial, false), dimension, angles);
    const Eigen::MatrixXcd fine = polar_quadrature(density_rule(eta, grid.radial, true), dimension, angles);

    TruncatedOperator op;
    op.method = GramMethod::polar_quadrature;
    op.angular_nodes = angles;
    op.entries = fine;
    op.entry_errors = (fine - coarse).cwiseAbs();
    for (int j = 0; j < dimension; ++j) {
        for (int k = 0; k < dimension; ++k) {
            if (op.entry_errors(j, k) > grid.entry_tolerance * (1.0 + std::abs(fine(j, k)))) {
                op.failed_entries.emplace_back(j, k);
            }
        }
    }
    return op;
}

DiagonalReport diagonal_report(const TruncatedOperator& op, const SpectralSequence& gamma,
                               const DiagonalTolerance& tol) {
    const int n = op.dimension();
    if (gamma.first > 0 || gamma.last() < n - 1) {
        throw DomainError("diagonal_report: spectral sequence must cover 0..N-1");
    }
    DiagonalReport rep;
    double max_diag = 0.0;
    bool diagonal_ok = true;
    for (int k = 0; k < n; ++k) {
        max_diag = std::max(max_diag, std::abs(op.entries(k, k)));
        const Complex g = gamma.at(k);
        const double err = std::abs(op.entries(k, k) - g);
        if (err > rep.max_diagonal_error) {
            rep.max_diagonal_error = err;
            rep.worst_diagonal = k;
        }
        if (err > tol.diagonal * (1.0 + std::abs(g))) diagonal_ok = false;
    }
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const double v = std::abs(op.entries(j, k));
            if (v > rep.max_off_diagonal) {
                rep.max_off_diagonal = v;
                rep.worst_off_diagonal = {j, k};
            }
        }
    }
    rep.off_threshold = tol.off_diagonal * (1.0 + max_diag);
    rep.pass = diagonal_ok && rep.max_off_diagonal <= rep.off_threshold;
    return rep;
}

double rotation_commutation(const TruncatedOperator& op, Complex tau, int count) {
    if (std::abs(std::abs(tau) - 1.0) > 1e-12) throw DomainError("rotation_commutation: |tau| must be 1");
    if (count < 1) throw DomainError("rotation_commutation: count must be >= 1");
    const int n = op.dimension();
    double worst = 0.0;
    Complex t = 1.0;
    for (int s = 1; s <= count; ++s) {
        t *= tau;
        t /= std::abs(t);
        std::vector<Complex> d(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(j)] = std::pow(std::conj(t), j);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const Complex c = op.entries(j, k) * (d[static_cast<std::size_t>(j)] - d[static_cast<std::size_t>(k)]);
                worst = std::max(worst, std::abs(c));
            }
        }
    }
    return worst;
}

double hermitian_defect(const TruncatedOperator& op) {
    return (op.entries - op.entries.adjoint()).cwiseAbs().maxCoeff();
}

void write_matrix_csv(std::ostream& out, const TruncatedOperator& op) {
    for (int j = 0; j < op.dimension(); ++j) {
        for (int k = 0; k < op.dimension(); ++k) {
            if (k) out << ',';
            csv::write_complex(out, op.entries(j, k));
        }
        out << '\n';
    }
}

}  // namespace bergman
