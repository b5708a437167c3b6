#include "ps2/integrate.hpp"

#include <map>
#include <optional>

#include "ps2/frontend.hpp"
#include "ps2/poly_algebra.hpp"
#include "ps2/roots.hpp"
#include "ps2/upoly.hpp"

namespace ps2 {

namespace {

using KPoly = UPoly<RatFun>;
using CField = Complex<RatFun>;
using CPoly = UPoly<CField>;

KPoly to_upoly(const Poly& p, Var v) {
    std::vector<RatFun> c;
    for (const Poly& q : coefficients_in(p, v)) c.emplace_back(q);
    return KPoly(std::move(c));
}

RatFun from_upoly(const KPoly& p, Var v) {
    RatFun out;
    const RatFun x = RatFun::variable(v);
    for (int i = p.degree(); i >= 0; --i) out = out * x + p.coeff(i);
    return out;
}

CPoly complexify(const KPoly& p) {
    std::vector<CField> c;
    for (const RatFun& q : p.coeffs()) c.emplace_back(q);
    return CPoly(std::move(c));
}

KPoly exact_quo(const KPoly& a, const KPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InternalError("inexact division in Hermite reduction");
    return q;
}

void add_log(ElemInvariant& out, const Rational& c, const RatFun& arg) {
    if (!arg.num().is_constant()) out.logs.push_back({c, arg.num()});
    if (!arg.den().is_constant()) out.logs.push_back({-c, arg.den()});
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    const Integer n = q.get_num(), d = q.get_den();
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rational(rn, rd);
}

// Constant-in-everything part of a resultant in t: gcd over the coefficients of
// each non-t monomial, as an ascending univariate polynomial over Q.
UPoly<Rational> constant_root_poly(const Poly& res) {
    std::map<Monomial, std::vector<Rational>> groups;
    for (const auto& term : res.terms()) {
        const int e = term.mono.exponent(Var::t);
        auto& c = groups[term.mono.with_exponent(Var::t, 0)];
        if (static_cast<int>(c.size()) <= e) c.resize(static_cast<std::size_t>(e) + 1, Rational(0));
        c[static_cast<std::size_t>(e)] = term.coeff;
    }
    UPoly<Rational> g;
    for (auto& [m, c] : groups) g = gcd(g, UPoly<Rational>(std::move(c)));
    return g;
}

// Log part of A/D with D squarefree in v and deg A < deg D.
std::optional<ElemInvariant> log_part(const KPoly& A, const KPoly& D, Var v) {
    const RatFun h = from_upoly(A, v) / from_upoly(D, v);
    const Poly& Ap = h.num();
    const Poly& Dp = h.den();
    const Poly res = resultant(Dp, Ap - Poly::variable(Var::t) * Dp.derivative(v), v);
    UPoly<Rational> G = constant_root_poly(res);
    if (G.degree() < 1) return std::nullopt;
    G = divmod(G, gcd(G, G.derivative())).first;  // squarefree

    const KPoly dD = D.derivative();
    ElemInvariant out;
    int covered = 0;
    const std::vector<Rational> roots = rational_roots(G.coeffs());
    for (const Rational& c : roots) {
        const KPoly g = gcd(D, A - dD.scaled(RatFun(c)));
        if (g.degree() < 1) continue;
        covered += g.degree();
        add_log(out, c, from_upoly(g, v));
    }

    const UPoly<Rational> rest(deflate(G.coeffs(), roots));
    if (rest.degree() == 2) {
        const Rational a = rest.coeff(2), b = rest.coeff(1), c = rest.coeff(0);
        const Rational re = -b / (2 * a);
        const auto im = rational_sqrt((4 * a * c - b * b) / (4 * a * a));
        if (im && sgn(*im) > 0) {
            const CField alpha{RatFun(re), RatFun(*im)};
            const CPoly cA = complexify(A), cD = complexify(D), cdD = complexify(dD);
            const CPoly g = gcd(cD, cA - cdD.scaled(alpha));
            if (g.degree() >= 1) {
                std::vector<RatFun> pc, qc;
                for (const CField& z : g.coeffs()) {
                    pc.push_back(z.re);
                    qc.push_back(z.im);
                }
                const RatFun P = from_upoly(KPoly(pc), v), Q = from_upoly(KPoly(qc), v);
                covered += 2 * g.degree();
                if (!is_zero(re)) add_log(out, re, P * P + Q * Q);
                if (!Q.is_zero()) {
                    const RatFun arg = P / Q;
                    out.atans.push_back({2 * *im, arg.num(), arg.den()});
                }
            }
        }
    }
    if (covered != D.degree()) return std::nullopt;
    return out;
}

}  // namespace

HermiteSplit hermite_reduce(const RatFun& f, Var v) {
    KPoly A = to_upoly(f.num(), v);
    const KPoly D = to_upoly(f.den(), v);
    auto [Q, rem] = divmod(A, D);

    RatFun g;
    for (int i = 0; i <= Q.degree(); ++i)
        g += Q.coeff(i) * RatFun(Rational(1, i + 1)) * RatFun(Poly::monomial(Monomial::of(v, i + 1), Rational(1)));

    A = std::move(rem);
    KPoly Dm = gcd(D, D.derivative());
    const KPoly Ds = exact_quo(D, Dm);
    while (Dm.degree() > 0) {
        const KPoly Dm2 = gcd(Dm, Dm.derivative());
        const KPoly Dms = exact_quo(Dm, Dm2);
        auto [B, C] = solve_bezout(-exact_quo(Ds * Dm.derivative(), Dm), Dms, A);
        A = C - exact_quo(B.derivative() * Ds, Dms);
        g += from_upoly(B, v) / from_upoly(Dm, v);
        Dm = Dm2;
    }
    return {g, from_upoly(A, v) / from_upoly(Ds, v)};
}

IntegralResult integrate_rational_partial(const RatFun& f, Var v) {
    IntegralResult out;
    if (f.is_zero()) return out;
    HermiteSplit split = hermite_reduce(f, v);
    out.value.z0 = split.g;
    if (split.h.is_zero()) {
        if (out.value.derivative(v) != f) throw InternalError("antiderivative check failed");
        return out;
    }

    const RatFun& h = split.h;
    if (!h.den().depends_on(v)) throw InternalError("Hermite remainder with polynomial denominator");
    auto logs = log_part(to_upoly(h.num(), v), to_upoly(h.den(), v), v);
    if (!logs) {
        out.remainder = h;
        return out;
    }
    out.value.logs = std::move(logs->logs);
    out.value.atans = std::move(logs->atans);
    out.value = canonicalize(std::move(out.value));
    if (out.value.derivative(v) != f) throw InternalError("antiderivative check failed");
    return out;
}

ElemInvariant integrate_rational(const RatFun& f, Var v) {
    IntegralResult r = integrate_rational_partial(f, v);
    if (!r.complete())
        throw UnsupportedIntegral("log part of the integral of " + render(r.remainder) +
                                  " needs non-rational constants");
    return std::move(r.value);
}

}  // namespace ps2
