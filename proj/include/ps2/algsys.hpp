#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ps2/deadline.hpp"
#include "ps2/poly.hpp"

namespace ps2 {

// Monomial in the unknowns u0, u1, ... stored as a sorted multiset of indices.
// Ordering is lexicographic with u0 > u1 > u2 > ...
class SysMono {
  public:
    static constexpr int kCapacity = 32;

    SysMono() = default;
    static SysMono of(int var, int exponent = 1);

    int degree() const { return len_; }
    bool is_one() const { return len_ == 0; }
    int exponent(int var) const;
    std::span<const std::uint16_t> vars() const { return {vars_.data(), len_}; }

    SysMono operator*(const SysMono& o) const;
    bool divides(const SysMono& o) const;
    SysMono operator/(const SysMono& o) const;  // requires o.divides(*this)
    static SysMono lcm(const SysMono& a, const SysMono& b);
    static SysMono gcd(const SysMono& a, const SysMono& b);
    SysMono without(int var) const;

    bool operator==(const SysMono& o) const;
    // Lex comparison: true when *this is larger.
    bool operator>(const SysMono& o) const;
    bool operator<(const SysMono& o) const { return o > *this; }

  private:
    std::array<std::uint16_t, kCapacity> vars_{};
    std::uint8_t len_ = 0;
};

// Polynomial in the unknowns with rational coefficients, terms in descending lex
// order. Also serves as the coefficient ring of AnsatzExpr.
class SysPoly {
  public:
    struct Term {
        SysMono mono;
        Rational coeff;
        bool operator==(const Term&) const = default;
    };

    SysPoly() = default;
    SysPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
    SysPoly(int c) : SysPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static SysPoly var(int v);
    static SysPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    Rational constant_value() const;  // only meaningful when is_constant()
    const Term& leading_term() const { return terms_.front(); }
    int degree() const;
    int degree_in(int var) const;
    std::vector<int> variables() const;  // ascending

    SysPoly operator-() const;
    friend SysPoly operator+(const SysPoly& a, const SysPoly& b) { return merge(a, b, false); }
    friend SysPoly operator-(const SysPoly& a, const SysPoly& b) { return merge(a, b, true); }
    friend SysPoly operator*(const SysPoly& a, const SysPoly& b);
    SysPoly& operator+=(const SysPoly& o) { return *this = *this + o; }
    SysPoly& operator-=(const SysPoly& o) { return *this = *this - o; }
    SysPoly& operator*=(const SysPoly& o) { return *this = *this * o; }

    SysPoly mul_term(const SysMono& m, const Rational& c) const;
    SysPoly scaled(const Rational& c) const { return mul_term(SysMono(), c); }
    SysPoly monic() const;  // leading coefficient 1 (0 stays 0)

    // Coefficients as a polynomial in `var`; entry i multiplies var^i.
    std::vector<SysPoly> coefficients_in(int var) const;

    SysPoly substitute(int var, const SysPoly& value) const;
    SysPoly substitute(int var, const Rational& value) const { return substitute(var, SysPoly(value)); }
    Rational evaluate(const std::vector<Rational>& values) const;

    bool operator==(const SysPoly&) const = default;

  private:
    static SysPoly merge(const SysPoly& a, const SysPoly& b, bool subtract);

    std::vector<Term> terms_;
};

inline bool is_zero(const SysPoly& p) { return p.is_zero(); }

// Exact quotient a / b when b divides a, nullopt otherwise.
std::optional<SysPoly> divide_exact(const SysPoly& a, const SysPoly& b);

// Polynomial in x, y, y' whose coefficients involve unknowns.
using AnsatzExpr = BasicPoly<SysPoly>;

AnsatzExpr lift(const Poly& p);

// Unknown names; index i names u_i.
struct SymbolTable {
    std::vector<std::string> names;

    int add(std::string name) {
        names.push_back(std::move(name));
        return static_cast<int>(names.size()) - 1;
    }
    int size() const { return static_cast<int>(names.size()); }
};

enum class AnsatzShape {
    total,  // i + j + k <= degree
    box,    // max(i, j, k) <= degree
};

// Generic polynomial with one unknown per monomial, monomials listed in
// descending canonical order.
struct AnsatzPoly {
    int degree = 0;
    AnsatzShape shape = AnsatzShape::total;
    std::vector<Monomial> monomials;
    std::vector<int> symbols;  // symbols[i] multiplies monomials[i]

    AnsatzExpr expr() const;
    Poly instantiate(const std::vector<Rational>& values) const;
};

AnsatzPoly make_ansatz(SymbolTable& table, const std::string& prefix, int degree, AnsatzShape shape,
                       std::span<const Var> vars);

// Substitutes concrete values for some unknowns in an ansatz expression.
AnsatzExpr substitute(const AnsatzExpr& e, int var, const Rational& value);

enum class EquationKind { linear, nonlinear };

struct AlgSystem {
    std::vector<std::string> unknowns;
    std::vector<SysPoly> equations;
    std::vector<EquationKind> kinds;

    void add(SysPoly eq);
};

// One equation per (x, y, y') monomial of the residual numerator. The
// denominator must be free of unknowns (InternalError otherwise).
AlgSystem collect_system(const AnsatzExpr& numerator, const AnsatzExpr& denominator,
                         const std::vector<std::string>& unknowns);
AlgSystem collect_system(const AnsatzExpr& residual, const std::vector<std::string>& unknowns);

struct SolutionBranch {
    std::vector<Rational> values;  // one per unknown
    std::vector<int> free;         // unknowns fixed by the free-variable heuristic

    bool operator==(const SolutionBranch&) const = default;
};

struct SolutionSet {
    std::vector<SolutionBranch> branches;
    bool irrational_branch = false;  // some branch needed a non-rational root and was dropped
};

// Reduced row echelon form over Q. Free unknowns are set to `free_value` and
// reported. Throws EmptySolution when inconsistent, InternalError if nonlinear.
SolutionSet solve_linear(const AlgSystem& sys, const Rational& free_value = 0);

struct SolveLimits {
    int max_degree = 12;
    std::size_t max_basis = 500;
    double timeout_seconds = 30;
    Deadline outer = Deadline::never();  // combined with the timeout
    Rational free_value = 0;
};

// All rational solution branches. Equations are split by linear elimination,
// monomial factors, linear-form factorization of quadrics and univariate
// rational roots; whatever resists is handed to a lex Groebner basis. Every
// returned branch is checked against every input equation.
// Throws LimitExceeded on basis size, degree or time limits.
SolutionSet solve_poly(const AlgSystem& sys, const SolveLimits& limits = {});

// Reduced lex Groebner basis (Buchberger, normal pair selection with the
// product and chain criteria). Returns {1} for inconsistent input.
std::vector<SysPoly> groebner_basis(std::vector<SysPoly> polys, const SolveLimits& limits, const Deadline& deadline);

SysPoly s_polynomial(const SysPoly& f, const SysPoly& g);
// Full reduction of p modulo the basis.
SysPoly normal_form(const SysPoly& p, const std::vector<SysPoly>& basis);

std::string render(const SysPoly& p, const std::vector<std::string>& names);

}  // namespace ps2
