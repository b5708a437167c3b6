#include <cctype>
#include <string>

#include "ps2/frontend.hpp"
#include "ps2/poly_algebra.hpp"

namespace ps2 {

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
  public:
    Parser(std::string_view text, std::size_t offset, ParseOptions options)
        : text_(text), pos_(offset), options_(options) {}

    ExprAst parse_all() {
        ExprAst e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

    std::size_t position() const { return pos_; }

  private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static ExprAst node(ExprAst::Kind kind, std::size_t pos, std::vector<ExprAst> children) {
        ExprAst e;
        e.kind = kind;
        e.position = pos;
        e.children = std::move(children);
        return e;
    }

    ExprAst expr() {
        ExprAst lhs = term();
        for (;;) {
            const std::size_t at = (skip_space(), pos_);
            if (accept('+'))
                lhs = node(ExprAst::Kind::add, at, {std::move(lhs), term()});
            else if (accept('-'))
                lhs = node(ExprAst::Kind::sub, at, {std::move(lhs), term()});
            else
                return lhs;
        }
    }

    ExprAst term() {
        ExprAst lhs = factor();
        for (;;) {
            const std::size_t at = (skip_space(), pos_);
            if (accept('*'))
                lhs = node(ExprAst::Kind::mul, at, {std::move(lhs), factor()});
            else if (accept('/'))
                lhs = node(ExprAst::Kind::div, at, {std::move(lhs), factor()});
            else
                return lhs;
        }
    }

    ExprAst factor() {
        ExprAst b = base();
        const std::size_t at = (skip_space(), pos_);
        if (!accept('^')) return b;
        ExprAst p = node(ExprAst::Kind::pow, at, {std::move(b)});
        p.exponent = integer_exponent();
        return p;
    }

    int integer_exponent() {
        const bool paren = accept('(');
        skip_space();
        const std::size_t start = pos_;
        bool negative = false;
        if (accept('-'))
            negative = true;
        else
            accept('+');
        skip_space();
        std::size_t end = pos_;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        if (end == pos_ || (end < text_.size() && (text_[end] == '.' || is_ident_char(text_[end]))))
            throw UnsupportedExpression("non-integer exponent", start);
        const std::string digits(text_.substr(pos_, end - pos_));
        if (digits.size() > 6) throw UnsupportedExpression("exponent too large", start);
        pos_ = end;
        if (paren && !accept(')')) throw UnsupportedExpression("non-integer exponent", start);
        const int value = std::stoi(digits);
        return negative ? -value : value;
    }

    ExprAst base() {
        skip_space();
        const std::size_t at = pos_;
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprAst e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (c == '-') {
            ++pos_;
            return node(ExprAst::Kind::neg, at, {factor()});
        }
        if (c == '+') {
            ++pos_;
            return factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    ExprAst number() {
        const std::size_t at = pos_;
        std::string int_part, frac_part;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) int_part += text_[pos_++];
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                frac_part += text_[pos_++];
        }
        if (int_part.empty() && frac_part.empty()) fail("malformed number");
        Integer num(int_part.empty() ? "0" : int_part);
        Integer den = 1;
        for (char d : frac_part) {
            num = num * 10 + (d - '0');
            den *= 10;
        }
        int exp10 = 0;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            bool neg = false;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) neg = text_[p++] == '-';
            std::size_t q = p;
            while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
            if (q == p || q - p > 4) fail("malformed exponent in number");
            exp10 = std::stoi(std::string(text_.substr(p, q - p)));
            if (neg) exp10 = -exp10;
            pos_ = q;
        }
        if (pos_ < text_.size() && is_ident_char(text_[pos_])) fail("unexpected character after number");
        Rational value(num, den);
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
        if (exp10 > 0) value *= scale;
        if (exp10 < 0) value /= scale;
        value.canonicalize();
        ExprAst e;
        e.kind = ExprAst::Kind::number;
        e.number = value;
        e.position = at;
        return e;
    }

    ExprAst identifier() {
        const std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < text_.size() && is_ident_char(text_[end])) ++end;
        const std::string name(text_.substr(pos_, end - pos_));
        pos_ = end;
        ExprAst e;
        e.kind = ExprAst::Kind::variable;
        e.position = at;
        if (name == "x") {
            e.variable = Var::x;
            return e;
        }
        if (name == "y1") {
            e.variable = Var::yp;
            return e;
        }
        if (name == "C1" && options_.allow_constant) {
            e.variable = Var::t;
            return e;
        }
        if (name == "y") {
            int primes = 0;
            while (pos_ < text_.size() && text_[pos_] == '\'') {
                ++primes;
                ++pos_;
            }
            if (primes > 1) throw UnsupportedExpression("y'' is not allowed on the right-hand side", at);
            e.variable = primes == 1 ? Var::yp : Var::y;
            return e;
        }
        const bool call = peek() == '(';
        if (call && options_.allow_functions && (name == "log" || name == "ln" || name == "atan" || name == "arctan")) {
            accept('(');
            ExprAst arg = expr();
            if (!accept(')')) fail("expected ')'");
            return node(name == "log" || name == "ln" ? ExprAst::Kind::log : ExprAst::Kind::atan, at, {std::move(arg)});
        }
        if (call) throw UnsupportedExpression("unsupported function '" + name + "'", at);
        throw ParseError("unknown symbol '" + name + "'", at);
    }

    std::string_view text_;
    std::size_t pos_;
    ParseOptions options_;
};

// Linear combination of a rational part with log / atan terms, built while
// folding an invariant AST.
struct LinearForm {
    RatFun rational;
    std::vector<LogTerm> logs;
    std::vector<AtanTerm> atans;

    bool pure() const { return logs.empty() && atans.empty(); }

    ElemInvariant to_invariant() const { return canonicalize(ElemInvariant{rational, logs, atans}); }
};

LinearForm scaled(LinearForm f, const Rational& c) {
    f.rational *= RatFun(c);
    for (auto& l : f.logs) l.coeff *= c;
    for (auto& a : f.atans) a.coeff *= c;
    return f;
}

LinearForm fold(const ExprAst& e, bool allow_functions) {
    using K = ExprAst::Kind;
    auto rec = [allow_functions](const ExprAst& c) { return fold(c, allow_functions); };
    switch (e.kind) {
        case K::number:
            return {RatFun(e.number), {}, {}};
        case K::variable:
            return {RatFun::variable(e.variable), {}, {}};
        case K::neg:
            return scaled(rec(e.children[0]), Rational(-1));
        case K::add:
        case K::sub: {
            LinearForm a = rec(e.children[0]);
            LinearForm b = rec(e.children[1]);
            if (e.kind == K::sub) b = scaled(std::move(b), Rational(-1));
            a.rational += b.rational;
            a.logs.insert(a.logs.end(), b.logs.begin(), b.logs.end());
            a.atans.insert(a.atans.end(), b.atans.begin(), b.atans.end());
            return a;
        }
        case K::mul: {
            LinearForm a = rec(e.children[0]);
            LinearForm b = rec(e.children[1]);
            if (a.pure() && b.pure()) return {a.rational * b.rational, {}, {}};
            if (a.pure() && a.rational.is_constant()) return scaled(std::move(b), a.rational.num().constant_term());
            if (b.pure() && b.rational.is_constant()) return scaled(std::move(a), b.rational.num().constant_term());
            throw UnsupportedExpression("log/atan terms may only be scaled by constants", e.position);
        }
        case K::div: {
            LinearForm a = rec(e.children[0]);
            LinearForm b = rec(e.children[1]);
            if (!b.pure()) throw UnsupportedExpression("division by a log/atan term", e.position);
            if (b.rational.is_zero()) throw DivisionByZero();
            if (a.pure()) return {a.rational / b.rational, {}, {}};
            if (b.rational.is_constant()) return scaled(std::move(a), Rational(1) / b.rational.num().constant_term());
            throw UnsupportedExpression("log/atan terms may only be scaled by constants", e.position);
        }
        case K::pow: {
            LinearForm a = rec(e.children[0]);
            if (!a.pure()) throw UnsupportedExpression("power of a log/atan term", e.position);
            return {a.rational.pow(e.exponent), {}, {}};
        }
        case K::log:
        case K::atan: {
            if (!allow_functions) throw UnsupportedExpression("transcendental function in rational expression", e.position);
            LinearForm a = rec(e.children[0]);
            if (!a.pure()) throw UnsupportedExpression("nested log/atan", e.position);
            if (e.kind == K::atan) return {RatFun(), {}, {AtanTerm{Rational(1), a.rational.num(), a.rational.den()}}};
            if (a.rational.is_zero()) throw UnsupportedExpression("log of zero", e.position);
            LinearForm out;
            if (!a.rational.num().is_constant()) out.logs.push_back({Rational(1), a.rational.num()});
            if (!a.rational.den().is_constant()) out.logs.push_back({Rational(-1), a.rational.den()});
            return out;
        }
    }
    throw InternalError("unknown expression kind");
}

}  // namespace

ExprAst parse_expression(std::string_view text, ParseOptions options) {
    Parser p(text, 0, options);
    return p.parse_all();
}

RatFun to_ratfun(const ExprAst& ast) { return fold(ast, false).rational; }

RatFun parse_ratfun(std::string_view text) {
    ParseOptions opts;
    opts.allow_constant = true;
    return to_ratfun(parse_expression(text, opts));
}

Poly parse_poly(std::string_view text) {
    const RatFun f = parse_ratfun(text);
    if (!f.is_polynomial()) throw ParseError("expected a polynomial", 0);
    return f.num();
}

ElemInvariant parse_invariant(std::string_view text) {
    ParseOptions opts;
    opts.allow_functions = true;
    return fold(parse_expression(text, opts), true).to_invariant();
}

ParsedOde parse_ode(std::string_view text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    int order = 0;
    if (text.substr(pos, 2) == "y1") {
        order = 1;
        pos += 2;
    } else if (text.substr(pos, 2) == "y2") {
        order = 2;
        pos += 2;
    } else if (pos < text.size() && text[pos] == 'y') {
        ++pos;
        while (pos < text.size() && text[pos] == '\'') {
            ++order;
            ++pos;
        }
    }
    if (order != 1 && order != 2) throw ParseError("expected \"y'' =\" or \"y' =\"", pos);
    skip();
    if (pos >= text.size() || text[pos] != '=') throw ParseError("expected '='", pos);
    ++pos;
    Parser parser(text, pos, ParseOptions{});
    const ExprAst ast = parser.parse_all();
    const RatFun rhs = to_ratfun(ast);
    if (order == 2) return make_soode(rhs);
    if (rhs.depends_on(Var::yp)) throw ParseError("first-order right-hand side must not contain y'", pos);
    return make_foode(rhs);
}

SOODE parse_soode(std::string_view text) {
    ParsedOde ode = parse_ode(text);
    if (auto* s = std::get_if<SOODE>(&ode)) return *s;
    throw ParseError("expected a second-order equation \"y'' = ...\"", 0);
}

FOODE parse_foode(std::string_view text) {
    ParsedOde ode = parse_ode(text);
    if (auto* f = std::get_if<FOODE>(&ode)) return *f;
    throw ParseError("expected a first-order equation \"y' = ...\"", 0);
}

}  // namespace ps2
