#include <string>

#include "ps2/frontend.hpp"

namespace ps2 {

namespace {

constexpr const char* kVarNames[kNumVars] = {"x", "y", "y'", "C1"};

std::string render_monomial(Monomial m) {
    std::string out;
    for (int i = 0; i < kNumVars; ++i) {
        const int e = m.exponent(i);
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += kVarNames[i];
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
}

// |c| * m without sign.
std::string render_unsigned_term(const Rational& abs_c, Monomial m) {
    if (m.is_one()) return abs_c.get_str();
    if (abs_c == 1) return render_monomial(m);
    return abs_c.get_str() + "*" + render_monomial(m);
}

void append_signed(std::string& out, bool negative, const std::string& body) {
    if (out.empty())
        out = negative ? "-" + body : body;
    else
        out += (negative ? " - " : " + ") + body;
}

bool needs_parens_as_divisor(const Poly& p) {
    if (p.size() > 1) return true;
    const auto& t = p.leading_term();
    if (t.coeff != 1) return true;
    int factors = 0;
    for (int i = 0; i < kNumVars; ++i) factors += t.mono.exponent(i) > 0;
    return factors > 1;
}

}  // namespace

std::string render(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& t : p.terms()) append_signed(out, sgn(t.coeff) < 0, render_unsigned_term(abs(t.coeff), t.mono));
    return out;
}

std::string render(const RatFun& f) {
    if (f.is_polynomial()) return render(f.num());
    std::string num = render(f.num());
    if (f.num().size() > 1) num = "(" + num + ")";
    std::string den = render(f.den());
    if (needs_parens_as_divisor(f.den())) den = "(" + den + ")";
    return num + "/" + den;
}

std::string render(const ElemInvariant& inv) {
    std::string out;
    if (!inv.z0.is_zero() || inv.is_rational()) out = render(inv.z0);
    for (const auto& l : inv.logs) {
        const Rational a = abs(l.coeff);
        std::string body = "log(" + render(l.arg) + ")";
        if (a != 1) body = a.get_str() + "*" + body;
        append_signed(out, sgn(l.coeff) < 0, body);
    }
    for (const auto& t : inv.atans) {
        const Rational a = abs(t.coeff);
        std::string body = "atan(" + render(RatFun(t.num, t.den)) + ")";
        if (a != 1) body = a.get_str() + "*" + body;
        append_signed(out, sgn(t.coeff) < 0, body);
    }
    return out;
}

std::string render(const SOODE& ode) { return "y'' = " + render(ode.phi()); }

std::string render(const FOODE& ode) { return "y' = " + render(ode.rhs()); }

}  // namespace ps2
