#include <algorithm>
#include <map>

#include "ps2/algsys.hpp"

namespace ps2 {

// ---- SysMono ----

SysMono SysMono::of(int var, int exponent) {
    if (exponent < 0 || exponent > kCapacity) throw LimitExceeded("unknown monomial degree exceeds capacity");
    SysMono m;
    for (int i = 0; i < exponent; ++i) m.vars_[i] = static_cast<std::uint16_t>(var);
    m.len_ = static_cast<std::uint8_t>(exponent);
    return m;
}

int SysMono::exponent(int var) const {
    int e = 0;
    for (int i = 0; i < len_; ++i) e += vars_[i] == var;
    return e;
}

SysMono SysMono::operator*(const SysMono& o) const {
    if (len_ + o.len_ > kCapacity) throw LimitExceeded("unknown monomial degree exceeds capacity");
    SysMono r;
    std::merge(vars_.begin(), vars_.begin() + len_, o.vars_.begin(), o.vars_.begin() + o.len_, r.vars_.begin());
    r.len_ = static_cast<std::uint8_t>(len_ + o.len_);
    return r;
}

bool SysMono::divides(const SysMono& o) const {
    return std::includes(o.vars_.begin(), o.vars_.begin() + o.len_, vars_.begin(), vars_.begin() + len_);
}

SysMono SysMono::operator/(const SysMono& o) const {
    SysMono r;
    auto end = std::set_difference(vars_.begin(), vars_.begin() + len_, o.vars_.begin(), o.vars_.begin() + o.len_,
                                   r.vars_.begin());
    r.len_ = static_cast<std::uint8_t>(end - r.vars_.begin());
    return r;
}

SysMono SysMono::lcm(const SysMono& a, const SysMono& b) {
    std::array<std::uint16_t, 2 * kCapacity> buf{};
    auto end = std::set_union(a.vars_.begin(), a.vars_.begin() + a.len_, b.vars_.begin(), b.vars_.begin() + b.len_,
                              buf.begin());
    const auto n = end - buf.begin();
    if (n > kCapacity) throw LimitExceeded("unknown monomial degree exceeds capacity");
    SysMono r;
    std::copy(buf.begin(), end, r.vars_.begin());
    r.len_ = static_cast<std::uint8_t>(n);
    return r;
}

SysMono SysMono::gcd(const SysMono& a, const SysMono& b) {
    SysMono r;
    auto end = std::set_intersection(a.vars_.begin(), a.vars_.begin() + a.len_, b.vars_.begin(),
                                     b.vars_.begin() + b.len_, r.vars_.begin());
    r.len_ = static_cast<std::uint8_t>(end - r.vars_.begin());
    return r;
}

SysMono SysMono::without(int var) const {
    SysMono r;
    for (int i = 0; i < len_; ++i)
        if (vars_[i] != var) r.vars_[r.len_++] = vars_[i];
    return r;
}

bool SysMono::operator==(const SysMono& o) const {
    return len_ == o.len_ && std::equal(vars_.begin(), vars_.begin() + len_, o.vars_.begin());
}

// Index lists are ascending, so the first mismatch decides: the smaller index
// means one more power of a larger variable.
bool SysMono::operator>(const SysMono& o) const {
    const int n = std::min(len_, o.len_);
    for (int i = 0; i < n; ++i)
        if (vars_[i] != o.vars_[i]) return vars_[i] < o.vars_[i];
    return len_ > o.len_;
}

// ---- SysPoly ----

SysPoly::SysPoly(const Rational& c) {
    if (!ps2::is_zero(c)) terms_.push_back({SysMono(), c});
}

SysPoly SysPoly::var(int v) {
    SysPoly p;
    p.terms_.push_back({SysMono::of(v), Rational(1)});
    return p;
}

SysPoly SysPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
    SysPoly p;
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && ps2::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && ps2::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    return p;
}

Rational SysPoly::constant_value() const { return terms_.empty() ? Rational(0) : terms_.back().coeff; }

int SysPoly::degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

int SysPoly::degree_in(int var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
    return d;
}

std::vector<int> SysPoly::variables() const {
    std::vector<int> out;
    for (const auto& t : terms_)
        for (auto v : t.mono.vars()) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SysPoly SysPoly::operator-() const {
    SysPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

SysPoly operator*(const SysPoly& a, const SysPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
    std::vector<SysPoly::Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return SysPoly::from_terms(std::move(out));
}

SysPoly SysPoly::mul_term(const SysMono& m, const Rational& c) const {
    SysPoly r;
    if (ps2::is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;  // lex order is a monomial order, so the term order survives
}

SysPoly SysPoly::monic() const {
    if (terms_.empty() || terms_[0].coeff == 1) return *this;
    return scaled(1 / terms_[0].coeff);
}

std::vector<SysPoly> SysPoly::coefficients_in(int var) const {
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(0, degree_in(var)) + 1));
    for (const auto& t : terms_) buckets[static_cast<std::size_t>(t.mono.exponent(var))].push_back({t.mono.without(var), t.coeff});
    std::vector<SysPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

SysPoly SysPoly::substitute(int var, const SysPoly& value) const {
    const int d = degree_in(var);
    if (d <= 0) return *this;
    const auto cs = coefficients_in(var);
    SysPoly acc = cs.back();
    for (std::size_t i = cs.size() - 1; i-- > 0;) acc = acc * value + cs[i];
    return acc;
}

Rational SysPoly::evaluate(const std::vector<Rational>& values) const {
    Rational acc = 0;
    for (const auto& t : terms_) {
        Rational p = t.coeff;
        for (auto v : t.mono.vars()) p *= values.at(v);
        acc += p;
    }
    return acc;
}

SysPoly SysPoly::merge(const SysPoly& a, const SysPoly& b, bool subtract) {
    SysPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
            r.terms_.push_back({b.terms_[j].mono, subtract ? Rational(-b.terms_[j].coeff) : b.terms_[j].coeff});
            ++j;
        } else {
            Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                                  : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
            if (!ps2::is_zero(c)) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

std::optional<SysPoly> divide_exact(const SysPoly& a, const SysPoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    SysPoly r = a;
    std::vector<SysPoly::Term> q;
    const auto& lb = b.leading_term();
    while (!r.is_zero()) {
        const auto& lr = r.leading_term();
        if (!lb.mono.divides(lr.mono)) return std::nullopt;
        const SysMono m = lr.mono / lb.mono;
        const Rational c = lr.coeff / lb.coeff;
        q.push_back({m, c});
        r -= b.mul_term(m, c);
    }
    return SysPoly::from_terms(std::move(q));
}

AnsatzExpr lift(const Poly& p) {
    return p.map_coefficients([](const Rational& c) { return SysPoly(c); });
}

// ---- ansatz ----

AnsatzExpr AnsatzPoly::expr() const {
    std::vector<AnsatzExpr::Term> terms;
    for (std::size_t i = 0; i < monomials.size(); ++i) terms.push_back({monomials[i], SysPoly::var(symbols[i])});
    return AnsatzExpr::from_terms(std::move(terms));
}

Poly AnsatzPoly::instantiate(const std::vector<Rational>& values) const {
    std::vector<Poly::Term> terms;
    for (std::size_t i = 0; i < monomials.size(); ++i) terms.push_back({monomials[i], values.at(symbols[i])});
    return Poly::from_terms(std::move(terms));
}

AnsatzPoly make_ansatz(SymbolTable& table, const std::string& prefix, int degree, AnsatzShape shape,
                       std::span<const Var> vars) {
    AnsatzPoly a;
    a.degree = degree;
    a.shape = shape;
    std::vector<int> ex(vars.size(), 0);
    // Odometer over exponent vectors in [0, degree]^k.
    for (;;) {
        int total = 0;
        for (int e : ex) total += e;
        if (shape == AnsatzShape::box || total <= degree) {
            Monomial m;
            for (std::size_t i = 0; i < vars.size(); ++i) m = m * Monomial::of(vars[i], ex[i]);
            a.monomials.push_back(m);
        }
        std::size_t i = 0;
        while (i < ex.size() && ex[i] == degree) ex[i++] = 0;
        if (i == ex.size()) break;
        ++ex[i];
    }
    std::sort(a.monomials.begin(), a.monomials.end(), std::greater<>());
    for (std::size_t i = 0; i < a.monomials.size(); ++i) a.symbols.push_back(table.add(prefix + std::to_string(i)));
    return a;
}

AnsatzExpr substitute(const AnsatzExpr& e, int var, const Rational& value) {
    return e.map_coefficients([&](const SysPoly& c) { return c.substitute(var, value); });
}

// ---- systems ----

void AlgSystem::add(SysPoly eq) {
    if (eq.is_zero()) return;
    kinds.push_back(eq.degree() <= 1 ? EquationKind::linear : EquationKind::nonlinear);
    equations.push_back(std::move(eq));
}

AlgSystem collect_system(const AnsatzExpr& numerator, const AnsatzExpr& denominator,
                         const std::vector<std::string>& unknowns) {
    if (denominator.is_zero()) throw InternalError("residual denominator is zero");
    for (const auto& t : denominator.terms())
        if (!t.coeff.is_constant()) throw InternalError("residual denominator contains unknowns");
    return collect_system(numerator, unknowns);
}

AlgSystem collect_system(const AnsatzExpr& residual, const std::vector<std::string>& unknowns) {
    AlgSystem sys;
    sys.unknowns = unknowns;
    for (const auto& t : residual.terms()) {
        for (const auto& st : t.coeff.terms())
            for (auto v : st.mono.vars())
                if (v >= unknowns.size()) throw InternalError("equation references an undeclared unknown");
        sys.add(t.coeff);
    }
    return sys;
}

SolutionSet solve_linear(const AlgSystem& sys, const Rational& free_value) {
    const std::size_t n = sys.unknowns.size();
    std::vector<std::vector<Rational>> rows;
    for (const auto& eq : sys.equations) {
        if (eq.degree() > 1) throw InternalError("solve_linear given a nonlinear equation");
        std::vector<Rational> row(n + 1);
        for (const auto& t : eq.terms()) {
            if (t.mono.is_one())
                row[n] = -t.coeff;
            else
                row[t.mono.vars()[0]] = t.coeff;
        }
        rows.push_back(std::move(row));
    }
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && is_zero(rows[p][c])) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        const Rational inv = 1 / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || is_zero(rows[i][c])) continue;
            const Rational f = rows[i][c];
            for (std::size_t k = c; k <= n; ++k) rows[i][k] -= f * rows[r][k];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (!is_zero(rows[i][n])) throw EmptySolution();

    SolutionBranch b;
    b.values.assign(n, free_value);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) b.free.push_back(static_cast<int>(c));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        Rational v = rows[i][n];
        for (int f : b.free) v -= rows[i][static_cast<std::size_t>(f)] * free_value;
        b.values[static_cast<std::size_t>(pivot_col[i])] = v;
    }
    SolutionSet out;
    out.branches.push_back(std::move(b));
    return out;
}

std::string render(const SysPoly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& t : p.terms()) {
        std::string mono;
        std::map<int, int> ex;
        for (auto v : t.mono.vars()) ++ex[v];
        for (const auto& [v, e] : ex) {
            if (!mono.empty()) mono += '*';
            mono += v < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(v)] : "u" + std::to_string(v);
            if (e > 1) mono += '^' + std::to_string(e);
        }
        const Rational a = abs(t.coeff);
        std::string body = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
        if (out.empty())
            out = sgn(t.coeff) < 0 ? "-" + body : body;
        else
            out += (sgn(t.coeff) < 0 ? " - " : " + ") + body;
    }
    return out;
}

}  // namespace ps2
