#include "ps2/poly_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace ps2 {

namespace {

using UPoly = std::vector<Poly>;

void trim(UPoly& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

int udeg(const UPoly& u) { return static_cast<int>(u.size()) - 1; }

Poly exact(const Poly& a, const Poly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw InternalError("expected exact polynomial division");
    return *std::move(q);
}

UPoly uprem(const UPoly& a, const UPoly& b) {
    UPoly r = a;
    const int db = udeg(b);
    const Poly& lb = b.back();
    int e = udeg(a) - db + 1;
    while (udeg(r) >= db && !r.empty()) {
        const Poly lr = r.back();
        const int k = udeg(r) - db;
        for (auto& c : r) c = c * lb;
        for (int i = 0; i <= db; ++i) r[i + k] -= lr * b[i];
        r.pop_back();
        trim(r);
        --e;
    }
    if (e > 0) {
        const Poly f = lb.pow(static_cast<unsigned>(e));
        for (auto& c : r) c = c * f;
    }
    return r;
}

Poly fold_gcd(const UPoly& coeffs) {
    Poly g;
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? primitive(c) : gcd(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g.is_zero() ? Poly(1) : g;
}

UPoly primitive_part(const UPoly& u) {
    const Poly c = fold_gcd(u);
    UPoly out;
    out.reserve(u.size());
    for (const auto& x : u) out.push_back(exact(x, c));
    return out;
}

// gcd of two polynomials primitive with respect to the main variable.
Poly subresultant_gcd(UPoly a, UPoly b, Var v) {
    if (udeg(a) < udeg(b)) std::swap(a, b);
    if (udeg(b) == 0) return Poly(1);
    Poly g(1), h(1);
    for (;;) {
        const int d = udeg(a) - udeg(b);
        UPoly r = uprem(a, b);
        if (r.empty()) return primitive(from_coefficients(primitive_part(b), v));
        if (udeg(r) == 0) return Poly(1);
        a = std::move(b);
        const Poly divisor = g * h.pow(static_cast<unsigned>(d));
        for (auto& c : r) c = exact(c, divisor);
        b = std::move(r);
        g = a.back();
        if (d == 0) {
            // h unchanged
        } else if (d == 1) {
            h = g;
        } else {
            h = exact(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
        }
    }
}

Poly divide_by_monomial(const Poly& p, Monomial m) {
    std::vector<Poly::Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) out.push_back({t.mono / m, t.coeff});
    return Poly::from_terms(std::move(out));
}

}  // namespace

Rational content(const Poly& p) {
    if (p.is_zero()) return Rational(0);
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& t : p.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    if (sgn(p.leading_coeff()) < 0) c = -c;
    return c;
}

Poly primitive(const Poly& p) {
    if (p.is_zero()) return p;
    const Rational c = content(p);
    if (c == 1) return p;
    return p.scaled(Rational(1) / c);
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(Rational(1) / b.leading_coeff());
    if (b.size() == 1) {
        const auto& lt = b.leading_term();
        std::vector<Poly::Term> out;
        out.reserve(a.size());
        for (const auto& t : a.terms()) {
            if (!lt.mono.divides(t.mono)) return std::nullopt;
            out.push_back({t.mono / lt.mono, t.coeff / lt.coeff});
        }
        return Poly::from_terms(std::move(out));
    }
    if (a.degree() < b.degree()) return std::nullopt;
    for (int i = 0; i < kNumVars; ++i) {
        const Var v = static_cast<Var>(i);
        if (a.degree(v) < b.degree(v)) return std::nullopt;
    }
    Poly r = a;
    std::vector<Poly::Term> quotient;
    const auto& lt = b.leading_term();
    while (!r.is_zero()) {
        const auto& rt = r.leading_term();
        if (!lt.mono.divides(rt.mono)) return std::nullopt;
        const Monomial m = rt.mono / lt.mono;
        const Rational c = rt.coeff / lt.coeff;
        quotient.push_back({m, c});
        r -= b.mul_term(m, c);
    }
    return Poly::from_terms(std::move(quotient));
}

bool divides(const Poly& b, const Poly& a) { return divide_exact(a, b).has_value(); }

std::vector<Poly> coefficients_in(const Poly& p, Var v) {
    std::vector<std::vector<Poly::Term>> buckets(static_cast<std::size_t>(std::max(p.degree(v), 0)) + 1);
    for (const auto& t : p.terms()) {
        const int e = t.mono.exponent(v);
        buckets[e].push_back({t.mono.with_exponent(v, 0), t.coeff});
    }
    UPoly out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
    trim(out);
    return out;
}

Poly from_coefficients(const std::vector<Poly>& coeffs, Var v) {
    std::vector<Poly::Term> out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Monomial m = Monomial::of(v, static_cast<int>(i));
        for (const auto& t : coeffs[i].terms()) out.push_back({t.mono * m, t.coeff});
    }
    return Poly::from_terms(std::move(out));
}

Poly content_in(const Poly& p, Var v) {
    if (p.is_zero()) return Poly();
    return fold_gcd(coefficients_in(p, v));
}

Poly pseudo_remainder(const Poly& a, const Poly& b, Var v) {
    if (b.is_zero()) throw DivisionByZero();
    UPoly ua = coefficients_in(a, v), ub = coefficients_in(b, v);
    if (udeg(ua) < udeg(ub)) return a;
    return from_coefficients(uprem(ua, ub), v);
}

Monomial monomial_content(const Poly& p) {
    if (p.is_zero()) return Monomial{};
    Monomial m = p.terms().front().mono;
    for (const auto& t : p.terms()) m = Monomial::gcd(m, t.mono);
    return m;
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("gcd of two zero polynomials");
    if (a.is_zero()) return primitive(b);
    if (b.is_zero()) return primitive(a);
    if (a.is_constant() || b.is_constant()) return Poly(1);

    const Monomial ma = monomial_content(a), mb = monomial_content(b);
    const Poly mono = Poly::monomial(Monomial::gcd(ma, mb), Rational(1));
    Poly ra = ma.is_one() ? primitive(a) : primitive(divide_by_monomial(a, ma));
    Poly rb = mb.is_one() ? primitive(b) : primitive(divide_by_monomial(b, mb));
    if (ra.is_constant() || rb.is_constant()) return mono;
    if (ra == rb) return mono * ra;

    // A variable present in only one argument can be projected away through the content.
    for (int i = 0; i < kNumVars; ++i) {
        const Var v = static_cast<Var>(i);
        const bool in_a = ra.depends_on(v), in_b = rb.depends_on(v);
        if (in_a && !in_b) return primitive(mono * gcd(content_in(ra, v), rb));
        if (in_b && !in_a) return primitive(mono * gcd(ra, content_in(rb, v)));
    }

    Var main = Var::x;
    int best = -1;
    for (int i = 0; i < kNumVars; ++i) {
        const Var v = static_cast<Var>(i);
        if (!ra.depends_on(v)) continue;
        const int d = std::max(ra.degree(v), rb.degree(v));
        if (best < 0 || d < best) {
            best = d;
            main = v;
        }
    }

    const Poly ca = content_in(ra, main), cb = content_in(rb, main);
    const Poly pa = exact(ra, ca), pb = exact(rb, cb);
    const Poly c = gcd(ca, cb);
    const Poly g = subresultant_gcd(coefficients_in(pa, main), coefficients_in(pb, main), main);
    return primitive(mono * c * g);
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return primitive(exact(a * b, gcd(a, b)));
}

Poly resultant(const Poly& a, const Poly& b, Var v) {
    if (a.is_zero() || b.is_zero()) return Poly();
    const UPoly ua = coefficients_in(a, v), ub = coefficients_in(b, v);
    const int m = udeg(ua), n = udeg(ub);
    if (m == 0) return a.pow(static_cast<unsigned>(n));
    if (n == 0) return b.pow(static_cast<unsigned>(m));
    const int size = m + n;
    std::vector<std::vector<Poly>> mat(size, std::vector<Poly>(size));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) mat[r][r + i] = ua[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) mat[n + r][r + i] = ub[n - i];

    // Bareiss fraction-free elimination.
    Poly prev(1);
    bool negate = false;
    for (int k = 0; k < size - 1; ++k) {
        if (mat[k][k].is_zero()) {
            int swap_row = -1;
            for (int r = k + 1; r < size; ++r)
                if (!mat[r][k].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return Poly();
            std::swap(mat[k], mat[swap_row]);
            negate = !negate;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) mat[i][j] = exact(mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j], prev);
            mat[i][k] = Poly();
        }
        prev = mat[k][k];
    }
    Poly det = mat[size - 1][size - 1];
    return negate ? -det : det;
}

std::pair<Rational, std::vector<SquarefreeFactor>> squarefree_decomposition(const Poly& p) {
    if (p.is_zero()) throw Error("squarefree decomposition of zero");
    std::vector<SquarefreeFactor> factors;

    auto add = [&factors](const Poly& f, int mult) {
        if (f.is_constant()) return;
        factors.push_back({primitive(f), mult});
    };

    // Splits off the monomial part first: x^a y^b ... are squarefree factors of their own.
    const Monomial mc = monomial_content(p);
    Poly rest = primitive(divide_by_monomial(p, mc));
    for (int i = 0; i < kNumVars; ++i) {
        const int e = mc.exponent(i);
        if (e > 0) add(Poly::variable(static_cast<Var>(i)), e);
    }

    std::vector<Poly> work = {rest};
    while (!work.empty()) {
        Poly q = std::move(work.back());
        work.pop_back();
        if (q.is_constant()) continue;
        Var v = Var::x;
        for (int i = 0; i < kNumVars; ++i)
            if (q.depends_on(static_cast<Var>(i))) {
                v = static_cast<Var>(i);
                break;
            }
        const Poly cont = content_in(q, v);
        const Poly f = exact(q, cont);
        work.push_back(cont);

        // Yun's algorithm with respect to v.
        const Poly df = f.derivative(v);
        const Poly c = gcd(f, df);
        Poly w = exact(f, c);
        Poly y = exact(df, c);
        Poly z = y - w.derivative(v);
        int mult = 1;
        while (!w.is_constant()) {
            const Poly g = z.is_zero() ? primitive(w) : gcd(w, z);
            add(g, mult);
            w = exact(w, g);
            y = exact(z, g);
            z = y - w.derivative(v);
            ++mult;
        }
    }

    Poly prod(1);
    for (const auto& f : factors) prod *= f.factor.pow(static_cast<unsigned>(f.multiplicity));
    const Rational c = p.leading_coeff() / prod.leading_coeff();
    std::sort(factors.begin(), factors.end(), [](const SquarefreeFactor& a, const SquarefreeFactor& b) {
        if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
        return a.factor.leading_term().mono > b.factor.leading_term().mono;
    });
    return {c, std::move(factors)};
}

Poly squarefree_part(const Poly& p) {
    if (p.is_constant()) return Poly(1);
    Poly prod(1);
    for (const auto& f : squarefree_decomposition(p).second) prod *= f.factor;
    return primitive(prod);
}

Poly substitute(const Poly& p, Var v, const Poly& value) {
    const UPoly coeffs = coefficients_in(p, v);
    Poly result;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) result = result * value + *it;
    return result;
}

Poly substitute(const Poly& p, Var v, const Rational& value) { return substitute(p, v, Poly(value)); }

double evaluate(const Poly& p, const std::array<double, kNumVars>& point) {
    double sum = 0.0;
    for (const auto& t : p.terms()) {
        double term = to_double(t.coeff);
        for (int i = 0; i < kNumVars; ++i) {
            const int e = t.mono.exponent(i);
            if (e) term *= std::pow(point[i], e);
        }
        sum += term;
    }
    return sum;
}

Rational evaluate(const Poly& p, const std::array<Rational, kNumVars>& point) {
    Rational sum = 0;
    for (const auto& t : p.terms()) {
        Rational term = t.coeff;
        for (int i = 0; i < kNumVars; ++i) {
            const int e = t.mono.exponent(i);
            for (int k = 0; k < e; ++k) term *= point[i];
        }
        sum += term;
    }
    return sum;
}

bool has_integer_coefficients(const Poly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const Poly::Term& t) { return t.coeff.get_den() == 1; });
}

}  // namespace ps2
