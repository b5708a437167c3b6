#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "ps2/monomial.hpp"
#include "ps2/rational.hpp"

namespace ps2 {

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
    using ps2::is_zero;
    return is_zero(c);
}
}  // namespace detail

// Sparse polynomial in x, y, y' (and the auxiliary t) over a coefficient ring C.
// Terms are kept sorted by descending canonical order with no zero coefficients.
// C = Rational gives the exact carrier of the whole engine; C = SysPoly (see
// algsys.hpp) carries undetermined ansatz coefficients.
template <class C>
class BasicPoly {
  public:
    struct Term {
        Monomial mono;
        C coeff;

        bool operator==(const Term&) const = default;
    };

    BasicPoly() = default;
    BasicPoly(C c) {  // NOLINT(google-explicit-constructor): constants promote freely
        if (!detail::coeff_is_zero(c)) terms_.push_back({Monomial{}, std::move(c)});
    }
    BasicPoly(int c) : BasicPoly(C(c)) {}  // NOLINT(google-explicit-constructor)

    static BasicPoly variable(Var v) { return monomial(Monomial::of(v), C(1)); }

    static BasicPoly monomial(Monomial m, C c) {
        BasicPoly p;
        if (!detail::coeff_is_zero(c)) p.terms_.push_back({m, std::move(c)});
        return p;
    }

    // Builds from arbitrary (possibly unsorted, duplicated) terms.
    static BasicPoly from_terms(std::vector<Term> terms) {
        BasicPoly p;
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

    // Constant term (0 if absent).
    C constant_term() const { return coefficient(Monomial{}); }

    const Term& leading_term() const { return terms_.front(); }
    const Term& trailing_term() const { return terms_.back(); }
    const C& leading_coeff() const { return terms_.front().coeff; }

    int degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    int degree(Var v) const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
        return d;
    }

    bool depends_on(Var v) const { return degree(v) > 0; }

    C coefficient(Monomial m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, Monomial key) { return t.mono > key; });
        if (it != terms_.end() && it->mono == m) return it->coeff;
        return C(0);
    }

    BasicPoly operator-() const {
        BasicPoly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend BasicPoly operator+(const BasicPoly& a, const BasicPoly& b) { return merge(a, b, false); }
    friend BasicPoly operator-(const BasicPoly& a, const BasicPoly& b) { return merge(a, b, true); }

    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
        if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
        std::vector<Term> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
        return from_terms(std::move(out));
    }

    BasicPoly& operator+=(const BasicPoly& o) { return *this = *this + o; }
    BasicPoly& operator-=(const BasicPoly& o) { return *this = *this - o; }
    BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

    BasicPoly mul_term(Monomial m, const C& c) const {
        BasicPoly r;
        if (detail::coeff_is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            C prod = t.coeff * c;
            if (!detail::coeff_is_zero(prod)) r.terms_.push_back({t.mono * m, std::move(prod)});
        }
        return r;  // multiplication by a monomial preserves the order
    }

    BasicPoly scaled(const C& c) const { return mul_term(Monomial{}, c); }

    BasicPoly pow(unsigned e) const {
        BasicPoly result(C(1)), base = *this;
        while (e) {
            if (e & 1U) result *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return result;
    }

    BasicPoly derivative(Var v) const {
        std::vector<Term> out;
        for (const auto& t : terms_) {
            const int e = t.mono.exponent(v);
            if (e == 0) continue;
            out.push_back({t.mono.with_exponent(v, e - 1), t.coeff * C(e)});
        }
        return from_terms(std::move(out));
    }

    template <class F>
    auto map_coefficients(F&& f) const {
        using D = decltype(f(std::declval<const C&>()));
        std::vector<typename BasicPoly<D>::Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) out.push_back({t.mono, f(t.coeff)});
        return BasicPoly<D>::from_terms(std::move(out));
    }

    bool operator==(const BasicPoly&) const = default;

  private:
    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coeff += t.coeff;
            else {
                if (!out.empty() && detail::coeff_is_zero(out.back().coeff)) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && detail::coeff_is_zero(out.back().coeff)) out.pop_back();
        terms_ = std::move(out);
    }

    static BasicPoly merge(const BasicPoly& a, const BasicPoly& b, bool subtract) {
        BasicPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
                r.terms_.push_back({b.terms_[j].mono, subtract ? C(-b.terms_[j].coeff) : b.terms_[j].coeff});
                ++j;
            } else {
                C c = subtract ? C(a.terms_[i].coeff - b.terms_[j].coeff) : C(a.terms_[i].coeff + b.terms_[j].coeff);
                if (!detail::coeff_is_zero(c)) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

using Poly = BasicPoly<Rational>;

inline Poly var_poly(Var v) { return Poly::variable(v); }

}  // namespace ps2
