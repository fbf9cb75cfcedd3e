#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;

/// Unit point mass at `location` in [0, 1).
struct DiracAtom {
    double location = 0.0;
    friend bool operator==(const DiracAtom&, const DiracAtom&) = default;
};

/// Density (sum_m c_m r^m) dr on [lower, upper).
struct PolyDensity {
    std::vector<double> coefficients;
    double lower = 0.0;
    double upper = 1.0;
    friend bool operator==(const PolyDensity&, const PolyDensity&) = default;
};

/// Density r^q (1 - r)^p dr on [0, 1), p > -1, q >= 0.
struct JacobiDensity {
    double p = 0.0;
    double q = 0.0;
    friend bool operator==(const JacobiDensity&, const JacobiDensity&) = default;
};

/// One closed-form building block of a radial part. Parameters are validated
/// on construction; values are immutable afterwards.
class MeasurePrimitive {
public:
    using Variant = std::variant<DiracAtom, PolyDensity, JacobiDensity>;

    static MeasurePrimitive dirac(double location);
    static MeasurePrimitive poly(std::vector<double> coefficients, double lower = 0.0,
                                 double upper = 1.0);
    static MeasurePrimitive jacobi(double p, double q);
    /// r dr on [0, 1): the radial part of area measure on the disk.
    static MeasurePrimitive lebesgue();

    const Variant& variant() const noexcept { return value_; }
    bool is_atom() const noexcept { return std::holds_alternative<DiracAtom>(value_); }

    /// Integral of r^k; exact up to rounding.
    double moment(long k) const;
    double total_mass() const { return moment(0); }
    /// Mass of [r, 1) for r in [0, 1).
    double tail(double r) const;
    /// Mass of (-inf, u] (inclusive) or (-inf, u) (exclusive).
    double mass_up_to(double u, bool inclusive) const;
    /// Points where the primitive or its distribution function is not smooth.
    void append_breaks(std::vector<double>& out) const;

    std::string describe() const;

    friend bool operator==(const MeasurePrimitive&, const MeasurePrimitive&) = default;

private:
    explicit MeasurePrimitive(Variant v) : value_(std::move(v)) {}
    Variant value_;
};

struct MeasureTerm {
    Complex coefficient;
    MeasurePrimitive primitive;
    friend bool operator==(const MeasureTerm&, const MeasureTerm&) = default;
};

/// Finite complex combination of primitives: the radial part eta of a radial
/// measure on the unit disk.
class RadialMeasure {
public:
    /// The zero measure.
    RadialMeasure() = default;
    /// Merges terms with identical primitives and drops zero coefficients.
    explicit RadialMeasure(std::vector<MeasureTerm> terms);
    RadialMeasure(MeasurePrimitive primitive, Complex coefficient = 1.0);

    std::span<const MeasureTerm> terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    /// True only if every coefficient is real and >= 0 and every polynomial
    /// density was proven nonnegative on its support.
    bool positivity_certified() const noexcept { return positivity_ == Positivity::certified; }
    enum class Positivity { certified, not_positive, unknown };
    /// `unknown` when a polynomial's sign could not be established.
    Positivity positivity() const noexcept { return positivity_; }
    bool has_atoms() const noexcept;
    bool is_real() const noexcept;

    /// Sorted breakpoints in [0, 1], always containing 0 and 1.
    std::vector<double> breaks() const;
    /// True if a Jacobi term has a non-integer q (r^q is not smooth at 0).
    bool needs_origin_refinement() const noexcept;

    std::string describe() const;

    friend RadialMeasure operator+(const RadialMeasure& a, const RadialMeasure& b);
    friend RadialMeasure operator-(const RadialMeasure& a, const RadialMeasure& b);
    friend RadialMeasure operator*(Complex s, const RadialMeasure& m);

private:
    std::vector<MeasureTerm> terms_;
    Positivity positivity_ = Positivity::certified;
};

Complex moment(const RadialMeasure& eta, long k);
Complex total_mass(const RadialMeasure& eta);
/// eta([r, 1)); r must lie in [0, 1).
Complex tail_mass(const RadialMeasure& eta, double r);

struct DistributionValue {
    Complex right;  ///< F(u)  = eta((-inf, u])
    Complex left;   ///< F-(u) = eta((-inf, u))
};

DistributionValue distribution(const RadialMeasure& eta, double u);

/// Jordan decomposition eta = pos_real - neg_real + i (pos_imag - neg_imag).
struct JordanParts {
    RadialMeasure pos_real;
    RadialMeasure neg_real;
    RadialMeasure pos_imag;
    RadialMeasure neg_imag;

    RadialMeasure recombine() const;
};

/// Splits every term by sign; polynomial supports are subdivided at real roots.
/// Throws RootFindingError if a piece cannot be certified.
JordanParts jordan_decompose(const RadialMeasure& eta);

}  // namespace bergman
