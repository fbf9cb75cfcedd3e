#include "bergman/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/csv.hpp"
#include "bergman/errors.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/special.hpp"

namespace bergman {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

// x^e for x in [0, 1]; underflow to 0 is accepted.
double unit_power(double x, double e) {
    if (e == 0.0) return 1.0;
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    return std::pow(x, e);
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

MeasurePrimitive MeasurePrimitive::dirac(double location) {
    require_finite(location, "dirac location");
    if (!(location >= 0.0 && location < 1.0)) {
        throw DomainError("dirac location must lie in [0, 1)");
    }
    return MeasurePrimitive(DiracAtom{location});
}

MeasurePrimitive MeasurePrimitive::poly(std::vector<double> coefficients, double lower,
                                        double upper) {
    if (coefficients.empty()) throw DomainError("poly needs at least one coefficient");
    for (double c : coefficients) require_finite(c, "poly coefficient");
    require_finite(lower, "poly support");
    require_finite(upper, "poly support");
    if (!(lower >= 0.0 && lower < upper && upper <= 1.0)) {
        throw DomainError("poly support [a, b) must satisfy 0 <= a < b <= 1");
    }
    return MeasurePrimitive(PolyDensity{std::move(coefficients), lower, upper});
}

MeasurePrimitive MeasurePrimitive::jacobi(double p, double q) {
    require_finite(p, "jacobi p");
    require_finite(q, "jacobi q");
    if (!(p > -1.0)) throw DomainError("jacobi p must be > -1");
    if (!(q >= 0.0)) throw DomainError("jacobi q must be >= 0");
    return MeasurePrimitive(JacobiDensity{p, q});
}

MeasurePrimitive MeasurePrimitive::lebesgue() { return poly({0.0, 1.0}, 0.0, 1.0); }

double MeasurePrimitive::moment(long k) const {
    if (k < 0) throw DomainError("moment order must be >= 0");
    const double kd = static_cast<double>(k);
    return std::visit(
        Overloaded{
            [&](const DiracAtom& d) { return unit_power(d.location, kd); },
            [&](const PolyDensity& p) {
                double acc = 0.0;
                for (std::size_t m = 0; m < p.coefficients.size(); ++m) {
                    const double e = kd + static_cast<double>(m) + 1.0;
                    acc += p.coefficients[m] *
                           (unit_power(p.upper, e) - unit_power(p.lower, e)) / e;
                }
                return acc;
            },
            [&](const JacobiDensity& j) { return special::beta(kd + j.q + 1.0, j.p + 1.0); },
        },
        value_);
}

double MeasurePrimitive::tail(double r) const {
    return std::visit(
        Overloaded{
            [&](const DiracAtom& d) { return d.location >= r ? 1.0 : 0.0; },
            [&](const PolyDensity& p) {
                if (r >= p.upper) return 0.0;
                return poly::integrate(p.coefficients, std::max(p.lower, r), p.upper);
            },
            [&](const JacobiDensity& j) {
                const double whole = special::beta(j.q + 1.0, j.p + 1.0);
                if (r <= 0.0) return whole;
                return whole * special::incomplete_beta(1.0 - r, r, j.p + 1.0, j.q + 1.0).value;
            },
        },
        value_);
}

double MeasurePrimitive::mass_up_to(double u, bool inclusive) const {
    return std::visit(
        Overloaded{
            [&](const DiracAtom& d) {
                return (inclusive ? d.location <= u : d.location < u) ? 1.0 : 0.0;
            },
            [&](const PolyDensity& p) {
                const double t = std::min(u, p.upper);
                if (t <= p.lower) return 0.0;
                return poly::integrate(p.coefficients, p.lower, t);
            },
            [&](const JacobiDensity& j) {
                if (u <= 0.0) return 0.0;
                const double whole = special::beta(j.q + 1.0, j.p + 1.0);
                if (u >= 1.0) return whole;
                return whole * special::incomplete_beta(u, 1.0 - u, j.q + 1.0, j.p + 1.0).value;
            },
        },
        value_);
}

void MeasurePrimitive::append_breaks(std::vector<double>& out) const {
    std::visit(Overloaded{
                   [&](const DiracAtom& d) { out.push_back(d.location); },
                   [&](const PolyDensity& p) {
                       out.push_back(p.lower);
                       out.push_back(p.upper);
                   },
                   [&](const JacobiDensity&) {},
               },
               value_);
}

std::string MeasurePrimitive::describe() const {
    using csv::format_real;
    return std::visit(
        Overloaded{
            [](const DiracAtom& d) { return "dirac(" + format_real(d.location) + ")"; },
            [](const PolyDensity& p) {
                std::string s = "poly([";
                for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
                    if (i) s += ", ";
                    s += format_real(p.coefficients[i]);
                }
                return s + "], " + format_real(p.lower) + ", " + format_real(p.upper) + ")";
            },
            [](const JacobiDensity& j) {
                return "jacobi(" + format_real(j.p) + ", " + format_real(j.q) + ")";
            },
        },
        value_);
}

RadialMeasure::RadialMeasure(std::vector<MeasureTerm> terms) {
    for (auto& t : terms) {
        if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag())) {
            throw DomainError("measure coefficients must be finite");
        }
        auto it = std::find_if(terms_.begin(), terms_.end(),
                               [&](const MeasureTerm& e) { return e.primitive == t.primitive; });
        if (it != terms_.end()) {
            it->coefficient += t.coefficient;
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const MeasureTerm& t) { return t.coefficient == Complex(0.0); });

    positivity_ = Positivity::certified;
    for (const auto& t : terms_) {
        if (t.coefficient.imag() != 0.0 || t.coefficient.real() < 0.0) {
            positivity_ = Positivity::not_positive;
            return;
        }
    }
    for (const auto& t : terms_) {
        const auto* p = std::get_if<PolyDensity>(&t.primitive.variant());
        if (!p) continue;
        poly::Sign sign = poly::Sign::unknown;
        try {
            sign = poly::sign_on(p->coefficients, p->lower, p->upper);
        } catch (const RootFindingError&) {
            sign = poly::Sign::unknown;
        }
        if (sign == poly::Sign::unknown) {
            positivity_ = Positivity::unknown;
        } else if (sign != poly::Sign::nonnegative) {
            positivity_ = Positivity::not_positive;
            return;
        }
    }
}

RadialMeasure::RadialMeasure(MeasurePrimitive primitive, Complex coefficient)
    : RadialMeasure(std::vector<MeasureTerm>{{coefficient, std::move(primitive)}}) {}

bool RadialMeasure::has_atoms() const noexcept {
    return std::any_of(terms_.begin(), terms_.end(),
                       [](const MeasureTerm& t) { return t.primitive.is_atom(); });
}

bool RadialMeasure::is_real() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const MeasureTerm& t) { return t.coefficient.imag() == 0.0; });
}

std::vector<double> RadialMeasure::breaks() const {
    std::vector<double> out{0.0, 1.0};
    for (const auto& t : terms_) t.primitive.append_breaks(out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool RadialMeasure::needs_origin_refinement() const noexcept {
    return std::any_of(terms_.begin(), terms_.end(), [](const MeasureTerm& t) {
        const auto* j = std::get_if<JacobiDensity>(&t.primitive.variant());
        return j && j->q != std::floor(j->q);
    });
}

std::string RadialMeasure::describe() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << " + ";
        const Complex c = terms_[i].coefficient;
        os << '(' << csv::format_real(c.real()) << (c.imag() < 0 ? "-" : "+")
           << csv::format_real(std::abs(c.imag())) << "i)*" << terms_[i].primitive.describe();
    }
    return os.str();
}

RadialMeasure operator+(const RadialMeasure& a, const RadialMeasure& b) {
    std::vector<MeasureTerm> terms(a.terms_.begin(), a.terms_.end());
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return RadialMeasure(std::move(terms));
}

RadialMeasure operator-(const RadialMeasure& a, const RadialMeasure& b) {
    return a + Complex(-1.0) * b;
}

RadialMeasure operator*(Complex s, const RadialMeasure& m) {
    std::vector<MeasureTerm> terms(m.terms_.begin(), m.terms_.end());
    for (auto& t : terms) t.coefficient *= s;
    return RadialMeasure(std::move(terms));
}

Complex moment(const RadialMeasure& eta, long k) {
    if (k < 0) throw DomainError("moment order must be >= 0");
    Complex acc{};
    for (const auto& t : eta.terms()) acc += t.coefficient * t.primitive.moment(k);
    return acc;
}

Complex total_mass(const RadialMeasure& eta) { return moment(eta, 0); }

Complex tail_mass(const RadialMeasure& eta, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("tail_mass: r must lie in [0, 1)");
    Complex acc{};
    for (const auto& t : eta.terms()) acc += t.coefficient * t.primitive.tail(r);
    return acc;
}

DistributionValue distribution(const RadialMeasure& eta, double u) {
    if (std::isnan(u)) throw DomainError("distribution: u must not be NaN");
    DistributionValue out{};
    if (u < 0.0) return out;
    for (const auto& t : eta.terms()) {
        out.right += t.coefficient * t.primitive.mass_up_to(u, true);
        out.left += t.coefficient * t.primitive.mass_up_to(u, false);
    }
    return out;
}

RadialMeasure JordanParts::recombine() const {
    return pos_real - neg_real + Complex(0.0, 1.0) * (pos_imag - neg_imag);
}

namespace {

void split_real(double s, const MeasurePrimitive& prim, std::vector<MeasureTerm>& pos,
                std::vector<MeasureTerm>& neg) {
    if (s == 0.0) return;
    const auto* p = std::get_if<PolyDensity>(&prim.variant());
    if (!p) {
        (s > 0 ? pos : neg).push_back({std::abs(s), prim});
        return;
    }
    std::vector<double> cuts{p->lower};
    for (double r : poly::real_roots_in(p->coefficients, p->lower, p->upper)) cuts.push_back(r);
    cuts.push_back(p->upper);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        if (!(hi > lo)) continue;
        const poly::Sign sign = poly::sign_on(p->coefficients, lo, hi);
        std::vector<double> c = p->coefficients;
        double sigma = 1.0;
        if (sign == poly::Sign::nonpositive) {
            sigma = -1.0;
            for (double& v : c) v = -v;
        } else if (sign != poly::Sign::nonnegative) {
            throw RootFindingError("jordan_decompose: could not isolate the sign of " +
                                   prim.describe() + " on [" + csv::format_real(lo) + ", " +
                                   csv::format_real(hi) + ")");
        }
        if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) continue;
        const double contribution = s * sigma;
        (contribution > 0 ? pos : neg)
            .push_back({std::abs(s), MeasurePrimitive::poly(std::move(c), lo, hi)});
    }
}

}  // namespace

JordanParts jordan_decompose(const RadialMeasure& eta) {
    if (eta.positivity_certified()) return {eta, {}, {}, {}};
    std::vector<MeasureTerm> pr, nr, pi, ni;
    for (const auto& t : eta.terms()) {
        split_real(t.coefficient.real(), t.primitive, pr, nr);
        split_real(t.coefficient.imag(), t.primitive, pi, ni);
    }
    JordanParts parts{RadialMeasure(std::move(pr)), RadialMeasure(std::move(nr)),
                      RadialMeasure(std::move(pi)), RadialMeasure(std::move(ni))};
    for (const RadialMeasure* m : {&parts.pos_real, &parts.neg_real, &parts.pos_imag,
                                   &parts.neg_imag}) {
        if (!m->positivity_certified()) {
            throw RootFindingError("jordan_decompose: a part failed positivity certification");
        }
    }
    return parts;
}

}  // namespace bergman
