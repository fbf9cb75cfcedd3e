#pragma once

#include <memory>
#include <stdexcept>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bergman/measure.hpp"

namespace bergman::dsl {

/// 1-based line and column of the first byte, and length in bytes.
struct Span {
    int line = 1;
    int column = 1;
    int length = 0;
    friend bool operator==(const Span&, const Span&) = default;
};

struct Scalar {
    Complex value;
    Span span;
};

struct Number {
    double value;
    Span span;
};

struct DiracNode {
    Number location;
};

struct LebesgueNode {};

struct PolyNode {
    std::vector<Number> coefficients;
    std::optional<Number> lower;
    std::optional<Number> upper;
};

struct JacobiNode {
    Number p;
    Number q;
};

struct MeasureExpr;

struct GroupNode {
    std::shared_ptr<const MeasureExpr> inner;
};

struct Primitive {
    std::variant<DiracNode, LebesgueNode, PolyNode, JacobiNode, GroupNode> node;
    Span span;
};

/// `[scalar '*'] primitive` or a bare scalar (which must be zero).
struct Term {
    std::optional<Scalar> scale;
    std::optional<Primitive> primitive;
    Span span;
};

struct SignedTerm {
    bool negated = false;
    Term term;
};

/// measure := term (('+' | '-') term)*
struct MeasureExpr {
    std::vector<SignedTerm> terms;
    Span span;
};

enum class DiagnosticKind { lexical, unexpected_token, domain_violation, nesting_too_deep };

const char* to_string(DiagnosticKind k);

struct Diagnostic {
    DiagnosticKind kind;
    std::string message;
    Span span;
    std::vector<std::string> expected;

    /// "line:col: kind: message (expected ...)"
    std::string format() const;
};

struct ParseResult {
    std::optional<MeasureExpr> ast;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return ast.has_value(); }
};

inline constexpr int kMaxNesting = 200;

/// Recursive-descent parser. Total: any byte string yields an AST or diagnostics.
ParseResult parse(std::string_view text);

/// Normal form: numbers with 17 significant digits, single spaces around
/// '+'/'-', explicit poly supports.
std::string print(const MeasureExpr& ast);

/// Equality ignoring source spans.
bool same_structure(const MeasureExpr& a, const MeasureExpr& b);

/// Flattens the tree into terms, merging identical primitives and dropping
/// zero coefficients; the result carries its positivity certification.
RadialMeasure elaborate(const MeasureExpr& ast);

class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::vector<Diagnostic> diags);
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

/// parse + elaborate; throws ParseError.
RadialMeasure parse_measure(std::string_view text);

}  // namespace bergman::dsl
