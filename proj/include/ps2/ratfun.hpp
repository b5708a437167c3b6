#pragma once

#include <array>

#include "ps2/poly.hpp"

namespace ps2 {

// Reduced quotient num/den: gcd(num, den) = 1, den primitive over the integers
// with positive leading coefficient, zero is 0/1.
class RatFun {
  public:
    RatFun() : den_(1) {}
    RatFun(Poly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
    RatFun(const Rational& c) : num_(c), den_(1) {}      // NOLINT(google-explicit-constructor)
    RatFun(int c) : num_(c), den_(1) {}                  // NOLINT(google-explicit-constructor)
    RatFun(const Poly& num, const Poly& den);            // reduces; throws DivisionByZero

    static RatFun variable(Var v) { return RatFun(Poly::variable(v)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool depends_on(Var v) const { return num_.depends_on(v) || den_.depends_on(v); }

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    RatFun pow(int e) const;
    RatFun derivative(Var v) const;

    double evaluate(const std::array<double, kNumVars>& point) const;

    bool operator==(const RatFun&) const = default;

  private:
    struct Reduced {};
    RatFun(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

    Poly num_;
    Poly den_;
};

inline bool is_zero(const RatFun& f) { return f.is_zero(); }

}  // namespace ps2
