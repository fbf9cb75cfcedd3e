#include "bergman/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "bergman/csv.hpp"

namespace bergman::dsl {

const char* to_string(DiagnosticKind k) {
    switch (k) {
        case DiagnosticKind::lexical: return "lexical error";
        case DiagnosticKind::unexpected_token: return "unexpected token";
        case DiagnosticKind::domain_violation: return "domain violation";
        case DiagnosticKind::nesting_too_deep: return "nesting too deep";
    }
    return "?";
}

std::string Diagnostic::format() const {
    std::string s = std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
                    to_string(kind) + ": " + message;
    if (!expected.empty()) {
        s += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) s += i + 1 == expected.size() ? " or " : ", ";
            s += expected[i];
        }
        s += ")";
    }
    return s;
}

ParseError::ParseError(std::vector<Diagnostic> diags)
    : std::runtime_error(diags.empty() ? std::string("parse error") : diags.front().format()),
      diags_(std::move(diags)) {}

namespace {

enum class Tok { number, ident, plus, minus, star, lparen, rparen, lbracket, rbracket, comma, end };

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t offset;
    int line;
    int column;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + std::string(t.text) + "'";
}

struct Failure {
    Diagnostic diag;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::end, {}, pos_, line_, column_});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        while (pos_ < src_.size() &&
               (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) {
            advance();
        }
    }

    static bool digit(char c) { return c >= '0' && c <= '9'; }
    static bool alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

    Token make(Tok kind, std::size_t len) {
        Token t{kind, src_.substr(pos_, len), pos_, line_, column_};
        advance(len);
        return t;
    }

    Token next() {
        const char c = src_[pos_];
        switch (c) {
            case '+': return make(Tok::plus, 1);
            case '-': return make(Tok::minus, 1);
            case '*': return make(Tok::star, 1);
            case '(': return make(Tok::lparen, 1);
            case ')': return make(Tok::rparen, 1);
            case '[': return make(Tok::lbracket, 1);
            case ']': return make(Tok::rbracket, 1);
            case ',': return make(Tok::comma, 1);
            default: break;
        }
        if (digit(c) || (c == '.' && pos_ + 1 < src_.size() && digit(src_[pos_ + 1]))) {
            std::size_t len = 0;
            auto at = [&](std::size_t i) { return pos_ + i < src_.size() ? src_[pos_ + i] : '\0'; };
            while (digit(at(len))) ++len;
            if (at(len) == '.') {
                ++len;
                while (digit(at(len))) ++len;
            }
            if (at(len) == 'e' || at(len) == 'E') {
                std::size_t k = len + 1;
                if (at(k) == '+' || at(k) == '-') ++k;
                if (digit(at(k))) {
                    while (digit(at(k))) ++k;
                    len = k;
                }
            }
            return make(Tok::number, len);
        }
        if (alpha(c)) {
            std::size_t len = 1;
            while (pos_ + len < src_.size() && (alpha(src_[pos_ + len]) || digit(src_[pos_ + len]))) ++len;
            return make(Tok::ident, len);
        }
        const auto byte = static_cast<unsigned char>(c);
        std::string shown = std::isprint(byte) ? std::string("'") + c + "'" : "byte 0x" + hex(byte);
        throw Failure{{DiagnosticKind::lexical, "unexpected character " + shown, {line_, column_, 1}, {}}};
    }

    static std::string hex(unsigned char b) {
        const char* digits = "0123456789abcdef";
        return {digits[b >> 4], digits[b & 15]};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    MeasureExpr parse_all() {
        MeasureExpr m = measure();
        if (peek().kind != Tok::end) fail_unexpected({"'+'", "'-'", "end of input"});
        return m;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    Span span_from(const Token& first) const {
        const Token& last = toks_[pos_ == 0 ? 0 : pos_ - 1];
        const std::size_t end = last.offset + last.text.size();
        return {first.line, first.column, static_cast<int>(end - first.offset)};
    }

    [[noreturn]] void fail_unexpected(std::vector<std::string> expected) const {
        const Token& t = peek();
        throw Failure{{DiagnosticKind::unexpected_token, "unexpected " + describe(t),
                       {t.line, t.column, static_cast<int>(t.text.size())}, std::move(expected)}};
    }

    [[noreturn]] static void fail_domain(const std::string& msg, Span span) {
        throw Failure{{DiagnosticKind::domain_violation, msg, span, {}}};
    }

    void expect(Tok kind, const char* shown) {
        if (peek().kind != kind) fail_unexpected({shown});
        take();
    }

    bool is_ident(const Token& t, std::string_view name) const {
        return t.kind == Tok::ident && t.text == name;
    }

    bool starts_real(std::size_t ahead = 0) const {
        const Tok k = peek(ahead).kind;
        return k == Tok::number || ((k == Tok::plus || k == Tok::minus) && peek(ahead + 1).kind == Tok::number);
    }

    Number real() {
        const Token& first = peek();
        double sign = 1.0;
        if (first.kind == Tok::plus || first.kind == Tok::minus) {
            if (first.kind == Tok::minus) sign = -1.0;
            take();
        }
        if (peek().kind != Tok::number) fail_unexpected({"number"});
        const Token& num = take();
        const std::string text(num.text);
        const double v = std::strtod(text.c_str(), nullptr);
        const Span span = span_from(first);
        if (!std::isfinite(v)) fail_domain("number " + text + " is out of range", span);
        return {sign * v, span};
    }

    // scalar := real | real 'i' | real ('+'|'-') real 'i'
    Scalar scalar() {
        const Token& first = peek();
        const Number re = real();
        if (is_ident(peek(), "i")) {
            take();
            return {Complex(0.0, re.value), span_from(first)};
        }
        const Tok k = peek().kind;
        if ((k == Tok::plus || k == Tok::minus) && peek(1).kind == Tok::number && is_ident(peek(2), "i")) {
            const Number im = real();
            take();
            return {Complex(re.value, im.value), span_from(first)};
        }
        return {Complex(re.value, 0.0), re.span};
    }

    MeasureExpr measure() {
        const Token& first = peek();
        MeasureExpr m;
        m.terms.push_back({false, term()});
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const bool neg = take().kind == Tok::minus;
            m.terms.push_back({neg, term()});
        }
        m.span = span_from(first);
        return m;
    }

    Term term() {
        const Token& first = peek();
        Term t;
        if (starts_real()) {
            t.scale = scalar();
            if (peek().kind == Tok::star) {
                take();
                t.primitive = primitive();
            } else if (t.scale->value != Complex(0.0)) {
                fail_domain("a bare scalar is not a measure (only 0 denotes the zero measure); "
                            "write scalar '*' primitive",
                            t.scale->span);
            }
        } else {
            t.primitive = primitive();
        }
        t.span = span_from(first);
        return t;
    }

    Primitive primitive() {
        const Token& first = peek();
        Primitive p;
        if (is_ident(first, "dirac")) {
            take();
            expect(Tok::lparen, "'('");
            const Number x = real();
            if (!(x.value >= 0.0 && x.value < 1.0)) {
                fail_domain("dirac location must lie in [0, 1)", x.span);
            }
            expect(Tok::rparen, "')'");
            p.node = DiracNode{x};
        } else if (is_ident(first, "lebesgue")) {
            take();
            p.node = LebesgueNode{};
        } else if (is_ident(first, "poly")) {
            take();
            expect(Tok::lparen, "'('");
            expect(Tok::lbracket, "'['");
            PolyNode node;
            node.coefficients.push_back(real());
            while (peek().kind == Tok::comma) {
                take();
                node.coefficients.push_back(real());
            }
            expect(Tok::rbracket, "']'");
            if (peek().kind == Tok::comma) {
                take();
                node.lower = real();
                expect(Tok::comma, "','");
                node.upper = real();
                const Span support{node.lower->span.line, node.lower->span.column,
                                   node.lower->span.line == node.upper->span.line
                                       ? node.upper->span.column + node.upper->span.length - node.lower->span.column
                                       : node.lower->span.length};
                if (!(node.lower->value >= 0.0 && node.lower->value < node.upper->value &&
                      node.upper->value <= 1.0)) {
                    fail_domain("poly support [a, b) must satisfy 0 <= a < b <= 1", support);
                }
            }
            expect(Tok::rparen, "')'");
            p.node = std::move(node);
        } else if (is_ident(first, "jacobi")) {
            take();
            expect(Tok::lparen, "'('");
            const Number pp = real();
            if (!(pp.value > -1.0)) fail_domain("jacobi p must be > -1", pp.span);
            expect(Tok::comma, "','");
            const Number qq = real();
            if (!(qq.value >= 0.0)) fail_domain("jacobi q must be >= 0", qq.span);
            expect(Tok::rparen, "')'");
            p.node = JacobiNode{pp, qq};
        } else if (first.kind == Tok::lparen) {
            if (++depth_ > kMaxNesting) {
                throw Failure{{DiagnosticKind::nesting_too_deep,
                               "more than " + std::to_string(kMaxNesting) + " nested parentheses",
                               {first.line, first.column, 1}, {}}};
            }
            take();
            auto inner = std::make_shared<const MeasureExpr>(measure());
            expect(Tok::rparen, "')'");
            --depth_;
            p.node = GroupNode{std::move(inner)};
        } else {
            fail_unexpected({"number", "'dirac'", "'lebesgue'", "'poly'", "'jacobi'", "'('"});
        }
        p.span = span_from(first);
        return p;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

std::string print_scalar(Complex v) {
    using csv::format_real;
    if (v.imag() == 0.0) return format_real(v.real());
    if (v.real() == 0.0) return format_real(v.imag()) + "i";
    return format_real(v.real()) + (std::signbit(v.imag()) ? "-" : "+") +
           format_real(std::abs(v.imag())) + "i";
}

std::string print_primitive(const Primitive& p) {
    using csv::format_real;
    return std::visit(
        Overloaded{
            [](const DiracNode& d) { return "dirac(" + format_real(d.location.value) + ")"; },
            [](const LebesgueNode&) { return std::string("lebesgue"); },
            [](const PolyNode& n) {
                std::string s = "poly([";
                for (std::size_t i = 0; i < n.coefficients.size(); ++i) {
                    if (i) s += ", ";
                    s += format_real(n.coefficients[i].value);
                }
                s += "], " + format_real(n.lower ? n.lower->value : 0.0) + ", " +
                     format_real(n.upper ? n.upper->value : 1.0) + ")";
                return s;
            },
            [](const JacobiNode& j) {
                return "jacobi(" + format_real(j.p.value) + ", " + format_real(j.q.value) + ")";
            },
            [](const GroupNode& g) { return "(" + print(*g.inner) + ")"; },
        },
        p.node);
}

bool same_primitive(const Primitive& a, const Primitive& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        Overloaded{
            [&](const DiracNode& x) { return x.location.value == std::get<DiracNode>(b.node).location.value; },
            [&](const LebesgueNode&) { return true; },
            [&](const PolyNode& x) {
                const auto& y = std::get<PolyNode>(b.node);
                if (x.coefficients.size() != y.coefficients.size()) return false;
                for (std::size_t i = 0; i < x.coefficients.size(); ++i) {
                    if (x.coefficients[i].value != y.coefficients[i].value) return false;
                }
                return (x.lower ? x.lower->value : 0.0) == (y.lower ? y.lower->value : 0.0) &&
                       (x.upper ? x.upper->value : 1.0) == (y.upper ? y.upper->value : 1.0);
            },
            [&](const JacobiNode& x) {
                const auto& y = std::get<JacobiNode>(b.node);
                return x.p.value == y.p.value && x.q.value == y.q.value;
            },
            [&](const GroupNode& x) { return same_structure(*x.inner, *std::get<GroupNode>(b.node).inner); },
        },
        a.node);
}

void flatten(const MeasureExpr& m, Complex scale, std::vector<MeasureTerm>& out) {
    for (const SignedTerm& st : m.terms) {
        Complex c = st.negated ? -scale : scale;
        if (st.term.scale) c *= st.term.scale->value;
        if (!st.term.primitive) continue;
        std::visit(Overloaded{
                       [&](const DiracNode& d) {
                           out.push_back({c, MeasurePrimitive::dirac(d.location.value)});
                       },
                       [&](const LebesgueNode&) { out.push_back({c, MeasurePrimitive::lebesgue()}); },
                       [&](const PolyNode& n) {
                           std::vector<double> coeffs;
                           for (const Number& x : n.coefficients) coeffs.push_back(x.value);
                           out.push_back({c, MeasurePrimitive::poly(std::move(coeffs),
                                                                    n.lower ? n.lower->value : 0.0,
                                                                    n.upper ? n.upper->value : 1.0)});
                       },
                       [&](const JacobiNode& j) {
                           out.push_back({c, MeasurePrimitive::jacobi(j.p.value, j.q.value)});
                       },
                       [&](const GroupNode& g) { flatten(*g.inner, c, out); },
                   },
                   st.term.primitive->node);
    }
}

}  // namespace

ParseResult parse(std::string_view text) {
    ParseResult result;
    try {
        Parser parser(Lexer(text).run());
        result.ast = parser.parse_all();
    } catch (const Failure& f) {
        result.diagnostics.push_back(f.diag);
    }
    return result;
}

std::string print(const MeasureExpr& ast) {
    std::string s;
    for (std::size_t i = 0; i < ast.terms.size(); ++i) {
        const SignedTerm& st = ast.terms[i];
        if (i) s += st.negated ? " - " : " + ";
        const Term& t = st.term;
        if (t.scale) {
            s += print_scalar(t.scale->value);
            if (t.primitive) s += "*";
        }
        if (t.primitive) s += print_primitive(*t.primitive);
    }
    return s;
}

bool same_structure(const MeasureExpr& a, const MeasureExpr& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        const SignedTerm& x = a.terms[i];
        const SignedTerm& y = b.terms[i];
        if (x.negated != y.negated) return false;
        if (x.term.scale.has_value() != y.term.scale.has_value()) return false;
        if (x.term.scale && x.term.scale->value != y.term.scale->value) return false;
        if (x.term.primitive.has_value() != y.term.primitive.has_value()) return false;
        if (x.term.primitive && !same_primitive(*x.term.primitive, *y.term.primitive)) return false;
    }
    return true;
}

RadialMeasure elaborate(const MeasureExpr& ast) {
    std::vector<MeasureTerm> terms;
    flatten(ast, 1.0, terms);
    return RadialMeasure(std::move(terms));
}

RadialMeasure parse_measure(std::string_view text) {
    ParseResult r = parse(text);
    if (!r.ok()) throw ParseError(std::move(r.diagnostics));
    return elaborate(*r.ast);
}

}  // namespace bergman::dsl
