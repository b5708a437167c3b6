#include <algorithm>
#include <set>

#include "ps2/algsys.hpp"
#include "ps2/roots.hpp"

namespace ps2 {

// ---- Groebner bases ----

SysPoly s_polynomial(const SysPoly& f, const SysPoly& g) {
    const auto& lf = f.leading_term();
    const auto& lg = g.leading_term();
    const SysMono l = SysMono::lcm(lf.mono, lg.mono);
    return f.mul_term(l / lf.mono, 1 / lf.coeff) - g.mul_term(l / lg.mono, 1 / lg.coeff);
}

namespace {

SysPoly reduce_with(SysPoly p, const std::vector<SysPoly>& basis, const Deadline* deadline) {
    std::vector<SysPoly::Term> rest;
    std::size_t steps = 0;
    while (!p.is_zero()) {
        if (deadline && (++steps & 63U) == 0) deadline->check();
        const auto lt = p.leading_term();
        const SysPoly* red = nullptr;
        for (const auto& g : basis)
            if (!g.is_zero() && g.leading_term().mono.divides(lt.mono)) {
                red = &g;
                break;
            }
        if (red) {
            const auto& lg = red->leading_term();
            p -= red->mul_term(lt.mono / lg.mono, lt.coeff / lg.coeff);
        } else {
            rest.push_back(lt);
            p -= SysPoly::from_terms({lt});
        }
    }
    return SysPoly::from_terms(std::move(rest));
}

}  // namespace

SysPoly normal_form(const SysPoly& p, const std::vector<SysPoly>& basis) { return reduce_with(p, basis, nullptr); }

std::vector<SysPoly> groebner_basis(std::vector<SysPoly> polys, const SolveLimits& limits, const Deadline& deadline) {
    std::vector<SysPoly> G;
    for (auto& p : polys) {
        if (p.is_zero()) continue;
        if (p.is_constant()) return {SysPoly(1)};
        G.push_back(p.monic());
    }
    struct Pair {
        std::size_t i, j;
        int degree;
    };
    std::vector<Pair> pairs;
    std::set<std::pair<std::size_t, std::size_t>> done;
    auto add_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i)
            pairs.push_back({i, k, SysMono::lcm(G[i].leading_term().mono, G[k].leading_term().mono).degree()});
    };
    for (std::size_t k = 0; k < G.size(); ++k) add_pairs(k);

    // Buchberger's chain criterion: skip (i, j) if some k has LT(k) | lcm(i, j)
    // and both (i, k) and (j, k) were already treated.
    auto chain_skip = [&](std::size_t i, std::size_t j, const SysMono& l) {
        for (std::size_t k = 0; k < G.size(); ++k) {
            if (k == i || k == j || !G[k].leading_term().mono.divides(l)) continue;
            if (done.count({std::min(i, k), std::max(i, k)}) && done.count({std::min(j, k), std::max(j, k)}))
                return true;
        }
        return false;
    };

    while (!pairs.empty()) {
        deadline.check();
        auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            return a.degree != b.degree ? a.degree < b.degree : (a.j != b.j ? a.j < b.j : a.i < b.i);
        });
        const Pair pr = *it;
        pairs.erase(it);
        const auto& li = G[pr.i].leading_term().mono;
        const auto& lj = G[pr.j].leading_term().mono;
        const SysMono l = SysMono::lcm(li, lj);
        const bool coprime = SysMono::gcd(li, lj).is_one();
        const bool skip = coprime || chain_skip(pr.i, pr.j, l);
        done.insert({pr.i, pr.j});
        if (skip) continue;
        SysPoly h = reduce_with(s_polynomial(G[pr.i], G[pr.j]), G, &deadline);
        if (h.is_zero()) continue;
        if (h.is_constant()) return {SysPoly(1)};
        if (h.degree() > limits.max_degree) throw LimitExceeded("Groebner basis degree limit exceeded");
        G.push_back(h.monic());
        if (G.size() > limits.max_basis) throw LimitExceeded("Groebner basis size limit exceeded");
        add_pairs(G.size() - 1);
    }

    // Minimal basis, then inter-reduce.
    std::vector<SysPoly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            const auto& mi = G[i].leading_term().mono;
            const auto& mj = G[j].leading_term().mono;
            if (mj.divides(mi) && (!(mj == mi) || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<SysPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        const auto lt = minimal[i].leading_term();
        SysPoly tail = minimal[i] - SysPoly::from_terms({lt});
        minimal[i] = SysPoly::from_terms({lt}) + reduce_with(tail, others, &deadline);
    }
    std::sort(minimal.begin(), minimal.end(),
              [](const SysPoly& a, const SysPoly& b) { return b.leading_term().mono > a.leading_term().mono; });
    return minimal;
}

// ---- splitting solver ----

namespace {

bool sys_less(const SysPoly& a, const SysPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (!(ta[i].mono == tb[i].mono)) return ta[i].mono > tb[i].mono;
        if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff;
    }
    return false;
}

bool rational_sqrt(const Rational& q, Rational& out) {
    if (sgn(q) < 0) return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    out = Rational(n, d);
    return true;
}

// Linear L with L^2 == q, if any.
std::optional<SysPoly> linear_sqrt(const SysPoly& q) {
    if (q.is_zero()) return SysPoly();
    const auto& lt = q.leading_term();
    const auto vars = lt.mono.vars();
    if (vars.size() != 0 && (vars.size() != 2 || vars[0] != vars[1])) return std::nullopt;
    Rational c;
    if (!rational_sqrt(lt.coeff, c)) return std::nullopt;
    SysPoly L = vars.empty() ? SysPoly(c) : SysPoly::var(vars[0]).scaled(c);
    const auto lead = L.leading_term();
    for (int iter = 0; iter < 64; ++iter) {
        const SysPoly r = q - L * L;
        if (r.is_zero()) return L;
        const auto& rt = r.leading_term();
        if (!lead.mono.divides(rt.mono)) return std::nullopt;
        const SysMono m = rt.mono / lead.mono;
        if (m.degree() > 1) return std::nullopt;
        L += SysPoly::from_terms({{m, rt.coeff / (2 * lead.coeff)}});
    }
    return std::nullopt;
}

// Factors of a quadric into linear forms; one entry for a perfect square.
std::optional<std::vector<SysPoly>> factor_quadric(const SysPoly& q) {
    if (q.degree() != 2) return std::nullopt;
    const auto vars = q.variables();
    for (int v : vars) {
        if (q.degree_in(v) != 2) continue;
        const auto cs = q.coefficients_in(v);
        if (!cs[2].is_constant()) continue;
        const Rational a = cs[2].constant_value();
        const SysPoly& B = cs[1];
        const SysPoly& C = cs[0];
        const auto L = linear_sqrt(B * B - C.scaled(4 * a));
        if (!L) return std::nullopt;
        const Rational inv = 1 / (2 * a);
        const SysPoly V = SysPoly::var(v);
        std::vector<SysPoly> out = {V + (B - *L).scaled(inv)};
        if (!L->is_zero()) out.push_back(V + (B + *L).scaled(inv));
        return out;
    }
    // No squares: q = v * B + C with B linear; factors exist iff B | C.
    for (int v : vars) {
        const auto cs = q.coefficients_in(v);
        if (cs.size() != 2 || cs[1].is_constant()) continue;
        const auto P = divide_exact(cs[0], cs[1]);
        if (!P || P->degree() > 1) continue;
        return std::vector<SysPoly>{cs[1], SysPoly::var(v) + *P};
    }
    return std::nullopt;
}

SysMono monomial_content(const SysPoly& p) {
    SysMono g = p.terms().front().mono;
    for (const auto& t : p.terms()) g = SysMono::gcd(g, t.mono);
    return g;
}

// Substituting a quadratic expression for v raises each equation's degree by
// at most its degree in v; beyond this bound the Groebner step degrades badly.
constexpr int kMaxEliminationDegree = 4;

int grown_degree(const std::vector<SysPoly>& eqs, int v) {
    int d = 0;
    for (const auto& e : eqs) d = std::max(d, e.degree() + std::max(0, e.degree_in(v)));
    return d;
}

struct Elimination {
    int var;
    SysPoly value;
};

struct State {
    std::vector<SysPoly> eqs;
    std::vector<Elimination> elim;
    std::vector<int> free;
    bool is_groebner = false;
};

class Splitter {
  public:
    Splitter(std::size_t n, const SolveLimits& limits, Deadline deadline)
        : n_(n), limits_(limits), deadline_(deadline) {}

    void run(State s);

    std::vector<SolutionBranch> branches;
    bool irrational = false;

  private:
    bool simplify(State& s) const;
    void assign(State& s, int var, const SysPoly& value) const;
    void finish(const State& s);

    std::size_t n_;
    const SolveLimits& limits_;
    Deadline deadline_;
};

bool Splitter::simplify(State& s) const {
    std::vector<SysPoly> out;
    for (auto& e : s.eqs) {
        if (e.is_zero()) continue;
        if (e.is_constant()) return false;
        out.push_back(e.monic());
    }
    std::sort(out.begin(), out.end(), sys_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    s.eqs = std::move(out);
    return true;
}

void Splitter::assign(State& s, int var, const SysPoly& value) const {
    for (auto& e : s.eqs) e = e.substitute(var, value);
    s.elim.push_back({var, value});
    s.is_groebner = false;
}

void Splitter::finish(const State& s) {
    SolutionBranch b;
    b.values.assign(n_, limits_.free_value);
    std::vector<bool> assigned(n_, false);
    for (const auto& e : s.elim) assigned[static_cast<std::size_t>(e.var)] = true;
    for (auto it = s.elim.rbegin(); it != s.elim.rend(); ++it)
        b.values[static_cast<std::size_t>(it->var)] = it->value.evaluate(b.values);
    b.free = s.free;
    for (std::size_t v = 0; v < n_; ++v)
        if (!assigned[v]) b.free.push_back(static_cast<int>(v));
    std::sort(b.free.begin(), b.free.end());
    branches.push_back(std::move(b));
}

void Splitter::run(State s) {
    for (;;) {
        deadline_.check();
        if (!simplify(s)) return;
        if (s.eqs.empty()) {
            finish(s);
            return;
        }

        // Linear equations: eliminate the leading unknown.
        const SysPoly* lin = nullptr;
        for (const auto& e : s.eqs)
            if (e.degree() == 1) {
                lin = &e;
                break;
            }
        if (lin) {
            const int v = lin->leading_term().mono.vars()[0];
            const SysPoly value = SysPoly::var(v) - *lin;
            assign(s, v, value);
            continue;
        }

        // An unknown of degree one with constant coefficient and a quadratic rest.
        bool eliminated = false;
        for (const auto& e : s.eqs) {
            for (int v : e.variables()) {
                if (e.degree_in(v) != 1) continue;
                const auto cs = e.coefficients_in(v);
                if (!cs[1].is_constant() || cs[0].degree() > 2) continue;
                if (cs[0].degree() == 2 && grown_degree(s.eqs, v) > kMaxEliminationDegree) continue;
                const SysPoly value = cs[0].scaled(-1 / cs[1].constant_value());
                assign(s, v, value);
                eliminated = true;
                break;
            }
            if (eliminated) break;
        }
        if (eliminated) continue;

        // Univariate equations: branch on rational roots.
        for (const auto& e : s.eqs) {
            const auto vars = e.variables();
            if (vars.size() != 1) continue;
            const int v = vars[0];
            std::vector<Rational> coeffs;
            for (const auto& c : e.coefficients_in(v)) coeffs.push_back(c.constant_value());
            const auto roots = rational_roots(coeffs);
            auto rest = coeffs;
            for (bool again = true; again && rest.size() > 1;) {
                again = false;
                for (const auto& r : roots) {
                    Rational val = 0;
                    for (auto it = rest.rbegin(); it != rest.rend(); ++it) val = val * r + *it;
                    if (is_zero(val)) {
                        rest = deflate(rest, {r});
                        again = true;
                    }
                }
            }
            if (rest.size() > 1) irrational = true;
            for (const auto& r : roots) {
                State t = s;
                assign(t, v, SysPoly(r));
                run(std::move(t));
            }
            return;
        }

        // Monomial factors: some unknown vanishes, or the cofactor does.
        std::size_t mono_idx = s.eqs.size();
        SysMono content;
        for (std::size_t i = 0; i < s.eqs.size(); ++i) {
            const SysMono m = monomial_content(s.eqs[i]);
            if (m.is_one()) continue;
            if (mono_idx == s.eqs.size() || (s.eqs[i].size() == 1 && s.eqs[mono_idx].size() != 1)) {
                mono_idx = i;
                content = m;
            }
            if (s.eqs[i].size() == 1) break;
        }
        if (mono_idx < s.eqs.size()) {
            std::vector<int> vars(content.vars().begin(), content.vars().end());
            vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
            for (int v : vars) {
                State t = s;
                assign(t, v, SysPoly());
                run(std::move(t));
            }
            if (s.eqs[mono_idx].size() > 1) {
                State t = s;
                t.eqs[mono_idx] = *divide_exact(t.eqs[mono_idx], SysPoly::from_terms({{content, 1}}));
                t.is_groebner = false;
                run(std::move(t));
            }
            return;
        }

        // Quadrics that split into linear forms.
        for (const auto& e : s.eqs) {
            if (e.degree() != 2) continue;
            const auto factors = factor_quadric(e);
            if (!factors) continue;
            for (const auto& f : *factors) {
                State t = s;
                t.eqs.push_back(f);
                t.is_groebner = false;
                run(std::move(t));
            }
            return;
        }

        if (!s.is_groebner) {
            auto basis = groebner_basis(s.eqs, limits_, deadline_);
            if (basis.size() == 1 && basis[0].is_constant()) return;
            s.eqs = std::move(basis);
            s.is_groebner = true;
            continue;
        }

        // Positive-dimensional remainder: fix the smallest unknown, falling back
        // to 1 when the preferred value lies outside the projection.
        int v = -1;
        for (const auto& e : s.eqs)
            for (int u : e.variables()) v = std::max(v, u);
        const std::size_t before = branches.size();
        for (const Rational& value : {limits_.free_value, Rational(1)}) {
            State t = s;
            assign(t, v, SysPoly(value));
            t.free.push_back(v);
            run(std::move(t));
            if (branches.size() > before || value == 1) break;
        }
        return;
    }
}

}  // namespace

SolutionSet solve_poly(const AlgSystem& sys, const SolveLimits& limits) {
    const Deadline deadline = Deadline(limits.timeout_seconds).min(limits.outer);
    Splitter splitter(sys.unknowns.size(), limits, deadline);
    State s;
    s.eqs = sys.equations;
    splitter.run(std::move(s));

    SolutionSet out;
    out.irrational_branch = splitter.irrational;
    for (auto& b : splitter.branches) {
        bool ok = true;
        for (const auto& e : sys.equations)
            if (!is_zero(e.evaluate(b.values))) {
                ok = false;
                break;
            }
        if (!ok) continue;
        if (std::find_if(out.branches.begin(), out.branches.end(),
                         [&](const SolutionBranch& o) { return o.values == b.values; }) != out.branches.end())
            continue;
        out.branches.push_back(std::move(b));
    }
    return out;
}

}  // namespace ps2
