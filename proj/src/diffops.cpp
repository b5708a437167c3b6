#include "ps2/diffops.hpp"

#include "ps2/errors.hpp"

namespace ps2 {

SOODE make_soode(const RatFun& phi) { return SOODE{phi.num(), phi.den()}; }

FOODE make_foode(const RatFun& rhs) {
    if (rhs.depends_on(Var::yp)) throw Error("first-order right-hand side must not contain y'");
    return FOODE{rhs.num(), rhs.den()};
}

RatFun total_D(const RatFun& f, const RatFun& phi) {
    const RatFun yp = RatFun::variable(Var::yp);
    return f.derivative(Var::x) + yp * f.derivative(Var::y) + phi * f.derivative(Var::yp);
}

Poly scaled_total_D(const Poly& f, const Poly& M, const Poly& N) {
    const Poly yp = Poly::variable(Var::yp);
    return N * f.derivative(Var::x) + N * yp * f.derivative(Var::y) + M * f.derivative(Var::yp);
}

Poly script_D(const Poly& f, const Poly& S_d, const Poly& M, const Poly& N) {
    return S_d * N * scaled_total_D(f, M, N);
}

Poly foode_D(const Poly& f, const FOODE& ode) { return ode.N * f.derivative(Var::x) + ode.M * f.derivative(Var::y); }

RatFun foode_D(const RatFun& f, const FOODE& ode) {
    return RatFun(ode.N) * f.derivative(Var::x) + RatFun(ode.M) * f.derivative(Var::y);
}

}  // namespace ps2
