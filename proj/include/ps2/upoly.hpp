#pragma once

#include <utility>
#include <vector>

#include "ps2/errors.hpp"
#include "ps2/ratfun.hpp"

namespace ps2 {

// a + b i over a field F.
template <class F>
struct Complex {
    F re;
    F im;

    Complex() : re(0), im(0) {}
    Complex(F r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    Complex(int r) : re(r), im(0) {}           // NOLINT(google-explicit-constructor)
    Complex(F r, F i) : re(std::move(r)), im(std::move(i)) {}

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    Complex operator-() const { return {-re, -im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const F n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    bool operator==(const Complex&) const = default;
};

template <class F>
bool is_zero(const Complex<F>& c) {
    return is_zero(c.re) && is_zero(c.im);
}

// Dense univariate polynomial over a field F; c[i] multiplies v^i, no
// trailing zeros.
template <class F>
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(std::vector<F> c) : c_(std::move(c)) { trim(); }
    UPoly(F constant) : c_{std::move(constant)} { trim(); }  // NOLINT(google-explicit-constructor)

    static UPoly x() { return UPoly(std::vector<F>{F(0), F(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<F>& coeffs() const { return c_; }
    F coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : F(0); }
    const F& lead() const { return c_.back(); }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return UPoly(std::move(r));
    }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (ps2_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }

    UPoly scaled(const F& s) const {
        std::vector<F> r = c_;
        for (auto& x : r) x = x * s;
        return UPoly(std::move(r));
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<F> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * F(static_cast<int>(i)));
        return UPoly(std::move(r));
    }

    UPoly monic() const { return is_zero() ? *this : scaled(F(1) / lead()); }

    // Euclidean division: a = q b + r with deg r < deg b.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw DivisionByZero();
        std::vector<F> r = a.c_;
        const int db = b.degree();
        std::vector<F> q(static_cast<std::size_t>(std::max(0, a.degree() - db + 1)), F(0));
        const F inv = F(1) / b.lead();
        for (int i = a.degree(); i >= db; --i) {
            const F t = r[static_cast<std::size_t>(i)] * inv;
            if (ps2_is_zero(t)) continue;
            q[static_cast<std::size_t>(i - db)] = t;
            for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] = r[static_cast<std::size_t>(i - db + j)] - t * b.c_[static_cast<std::size_t>(j)];
        }
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }

    // Monic gcd (zero when both are zero).
    friend UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // s a + t b = c with deg s < deg b (requires gcd(a, b) | c).
    friend std::pair<UPoly, UPoly> solve_bezout(const UPoly& a, const UPoly& b, const UPoly& c) {
        // Extended Euclid: g = s0 a + t0 b.
        UPoly r0 = a, r1 = b, s0(F(1)), s1, t0, t1(F(1));
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        auto [k, rem] = divmod(c, r0);
        if (!rem.is_zero()) throw InternalError("Bezout right-hand side not divisible by the gcd");
        UPoly s = s0 * k, t = t0 * k;
        if (!b.is_zero() && s.degree() >= b.degree()) {
            auto [q, r] = divmod(s, b);
            s = std::move(r);
            t = t + q * a;
        }
        return {s, t};
    }

    bool operator==(const UPoly&) const = default;

  private:
    static bool ps2_is_zero(const F& x) {
        using ps2::is_zero;
        return is_zero(x);
    }
    void trim() {
        while (!c_.empty() && ps2_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<F> c_;
};

}  // namespace ps2
