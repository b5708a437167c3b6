#include "ps2/invariant.hpp"

#include <algorithm>

#include "ps2/frontend.hpp"
#include "ps2/integrate.hpp"
#include "ps2/poly_algebra.hpp"

namespace ps2 {

namespace {

const RatFun& component(const Gradient& g, Var v) { return g[static_cast<std::size_t>(index(v))]; }

// p(x, y, y' := value) for a polynomial p.
RatFun substitute_yp(const Poly& p, const RatFun& value) {
    const std::vector<Poly> c = coefficients_in(p, Var::yp);
    RatFun out;
    for (auto it = c.rbegin(); it != c.rend(); ++it) out = out * value + RatFun(*it);
    return out;
}

}  // namespace

bool is_closed(const Gradient& grad) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (grad[i].derivative(kOdeVars[j]) != grad[j].derivative(kOdeVars[i])) return false;
    return true;
}

ElemInvariant integrate_gradient(const Gradient& grad, std::span<const Var> order) {
    if (!is_closed(grad)) throw InternalError("gradient is not closed");
    ElemInvariant F;
    std::vector<Var> done;
    for (Var v : order) {
        const RatFun r = component(grad, v) - F.derivative(v);
        for (Var w : done)
            if (r.depends_on(w)) throw InternalError("quadrature correction depends on an earlier variable");
        if (!r.is_zero()) F = F + integrate_rational(r, v);
        done.push_back(v);
    }
    for (Var v : kOdeVars)
        if (F.derivative(v) != component(grad, v)) throw InternalError("potential does not reproduce the gradient");
    return F;
}

Gradient invariant_gradient(const SRPair& pair) {
    const RatFun yp = RatFun::variable(Var::yp);
    return {pair.R * (pair.phi + pair.S * yp), -(pair.R * pair.S), -pair.R};
}

ElemInvariant build_invariant(const SRPair& pair) {
    static constexpr std::array<Var, 3> order = {Var::x, Var::y, Var::yp};
    return normalize_scale(canonicalize(integrate_gradient(invariant_gradient(pair), order)));
}

std::string ReducedODE::implicit_text() const { return render(invariant) + " = C1"; }

std::vector<std::string> ReducedODE::explicit_text() const {
    std::vector<std::string> out;
    for (const auto& b : branches) {
        std::string s = "y' = ";
        if (b.sign == 0) {
            s += render(b.base);
        } else {
            if (!b.base.is_zero()) s += "(" + render(b.base) + ") ";
            s += b.sign > 0 ? (b.base.is_zero() ? "" : "+ ") : (b.base.is_zero() ? "-" : "- ");
            s += "sqrt(" + render(b.radicand) + ")";
        }
        out.push_back(std::move(s));
    }
    return out;
}

ReducedODE reduce(const SOODE& /*ode*/, const ElemInvariant& inv) {
    ReducedODE out{inv, {}};
    if (!inv.is_rational()) return out;
    // I_n - C1 I_d = a y'^2 + b y' + c
    const Poly rel = inv.z0.num() - Poly::variable(Var::t) * inv.z0.den();
    const int deg = rel.degree(Var::yp);
    if (deg < 1 || deg > 2) return out;
    const std::vector<Poly> c = coefficients_in(rel, Var::yp);
    if (deg == 1) {
        const RatFun base = -RatFun(c[0]) / RatFun(c[1]);
        if (!substitute_yp(rel, base).is_zero()) throw InternalError("explicit branch check failed");
        out.branches.push_back({base, RatFun(), 0});
        return out;
    }
    const RatFun a(c[2]), b(c[1]), c0(c[0]);
    const RatFun base = -b / (RatFun(2) * a);
    const RatFun radicand = (b * b - RatFun(4) * a * c0) / (RatFun(4) * a * a);
    // a (p^2 + q) + b p + c = 0 and 2 a p + b = 0 make both signs exact.
    if (!(a * (base * base + radicand) + b * base + c0).is_zero() || !(RatFun(2) * a * base + b).is_zero())
        throw InternalError("explicit branch check failed");
    out.branches.push_back({base, radicand, 1});
    out.branches.push_back({base, radicand, -1});
    return out;
}

}  // namespace ps2
