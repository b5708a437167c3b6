#include "ps2/ratfun.hpp"

#include "ps2/poly_algebra.hpp"

namespace ps2 {

namespace {

Poly exact(const Poly& a, const Poly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw InternalError("expected exact polynomial division");
    return *std::move(q);
}

}  // namespace

RatFun::RatFun(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (den.is_constant()) {
        num_ = num.scaled(Rational(1) / den.leading_coeff());
        den_ = Poly(1);
        return;
    }
    const Poly g = gcd(num, den);
    Poly n = g.is_constant() ? num : exact(num, g);
    Poly d = g.is_constant() ? den : exact(den, g);
    const Rational c = content(d);
    if (d.is_constant()) {
        num_ = n.scaled(Rational(1) / d.leading_coeff());
        den_ = Poly(1);
        return;
    }
    num_ = n.scaled(Rational(1) / c);
    den_ = d.scaled(Rational(1) / c);
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_, Reduced{}); }

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.den_.is_constant()) return RatFun(a.num_ + b.num_);
        return RatFun(a.num_ + b.num_, a.den_);
    }
    if (a.den_.is_constant()) return RatFun(a.num_ * b.den_ + b.num_, b.den_, RatFun::Reduced{});
    if (b.den_.is_constant()) return RatFun(a.num_ + b.num_ * a.den_, a.den_, RatFun::Reduced{});
    const Poly g = gcd(a.den_, b.den_);
    const Poly ad = exact(a.den_, g), bd = exact(b.den_, g);
    return RatFun(a.num_ * bd + b.num_ * ad, ad * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    if (a.den_.is_constant() && b.den_.is_constant()) return RatFun(a.num_ * b.num_);
    const Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    const Poly n = exact(a.num_, g1) * exact(b.num_, g2);
    const Poly d = exact(a.den_, g2) * exact(b.den_, g1);
    if (d.is_constant()) return RatFun(n.scaled(Rational(1) / d.leading_coeff()));
    const Rational c = content(d);
    return RatFun(n.scaled(Rational(1) / c), d.scaled(Rational(1) / c), RatFun::Reduced{});
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw DivisionByZero();
    return a * RatFun(b.den_, b.num_);
}

RatFun RatFun::pow(int e) const {
    if (e < 0) {
        if (is_zero()) throw DivisionByZero();
        return RatFun(den_, num_).pow(-e);
    }
    const auto u = static_cast<unsigned>(e);
    return RatFun(num_.pow(u), den_.pow(u), Reduced{});
}

RatFun RatFun::derivative(Var v) const {
    if (den_.is_constant()) return RatFun(num_.derivative(v));
    // (n/d)' = (n' d - n d') / d^2 with gcd(d, d') cancelled up front.
    const Poly dd = den_.derivative(v);
    if (dd.is_zero()) return RatFun(num_.derivative(v), den_);
    const Poly g = gcd(den_, dd);
    const Poly dg = exact(den_, g);
    const Poly top = num_.derivative(v) * dg - num_ * exact(dd, g);
    return RatFun(top, den_ * dg);
}

double RatFun::evaluate(const std::array<double, kNumVars>& point) const {
    return ps2::evaluate(num_, point) / ps2::evaluate(den_, point);
}

}  // namespace ps2
