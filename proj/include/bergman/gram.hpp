#pragma once

#include <utility>
#include <vector>
#include <iosfwd>

#include <Eigen/Dense>

#include "bergman/measure.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/spectral.hpp"

namespace bergman {

/// b_k(z) = sqrt((k+1)/pi) z^k, the canonical orthonormal basis of the Bergman space.
Complex basis_eval(long k, Complex z);

enum class GramMethod { polar_exact, polar_quadrature };

const char* to_string(GramMethod m);

/// N x N section of the Toeplitz operator: entries <T b_j, b_k>.
struct TruncatedOperator {
    Eigen::MatrixXcd entries;
    GramMethod method = GramMethod::polar_exact;
    int angular_nodes = 0;
    /// Per-entry error estimates for the quadrature path; empty otherwise.
    Eigen::MatrixXd entry_errors;
    std::vector<std::pair<int, int>> failed_entries;

    int dimension() const { return static_cast<int>(entries.rows()); }
};

/// A[j][k] = sqrt((j+1)(k+1))/pi * moment(eta, j+k) * C_{j-k}, with C_m the
/// M-point trapezoid value of int_T tau^m d lambda. Requires M >= 2N + 2.
TruncatedOperator gram_matrix(const RadialMeasure& eta, int dimension, int angular_nodes);

struct GramQuadratureConfig {
    int angular_nodes = 0;  ///< 0 means 2N + 2
    QuadratureConfig radial{};
    double entry_tolerance = 1e-9;
};

/// Entries by two-dimensional polar quadrature of b_j conj(b_k) against the
/// density. Atoms are rejected; N <= 64.
TruncatedOperator gram_matrix_quadrature(const RadialMeasure& eta, int dimension,
                                         const GramQuadratureConfig& grid = {});

struct DiagonalTolerance {
    double off_diagonal = 1e-12;
    double diagonal = 1e-12;
};

struct DiagonalReport {
    double max_off_diagonal = 0.0;
    std::pair<int, int> worst_off_diagonal{0, 0};
    double max_diagonal_error = 0.0;
    int worst_diagonal = 0;
    /// Off-diagonal threshold actually applied: off_diagonal * (1 + max |A[k][k]|).
    double off_threshold = 0.0;
    bool pass = false;
};

/// Compares a section with the spectral sequence: off-diagonals must vanish and
/// A[k][k] must match gamma(k) within diagonal * (1 + |gamma(k)|).
DiagonalReport diagonal_report(const TruncatedOperator& op, const SpectralSequence& gamma,
                               const DiagonalTolerance& tol = {});

/// max over tau^1..tau^count of the max-entry norm of D A - A D, D = diag(tau^-j).
double rotation_commutation(const TruncatedOperator& op, Complex tau, int count);

/// max |A[j][k] - conj(A[k][j])|
double hermitian_defect(const TruncatedOperator& op);

/// Row-major CSV, one line per row, each cell as "re,im".
void write_matrix_csv(std::ostream& out, const TruncatedOperator& op);

}  // namespace bergman
