#include "ps2/ps_soode.hpp"

#include <algorithm>

#include "ps2/diffops.hpp"
#include "ps2/elem_invariant.hpp"
#include "ps2/frontend.hpp"
#include "ps2/poly_algebra.hpp"

namespace ps2 {

namespace {

const Poly kYp = var_poly(Var::yp);

// Numerators of phi_y and phi_y' over N^2.
Poly phi_y_num(const SOODE& o) { return o.M.derivative(Var::y) * o.N - o.M * o.N.derivative(Var::y); }
Poly phi_yp_num(const SOODE& o) { return o.M.derivative(Var::yp) * o.N - o.M * o.N.derivative(Var::yp); }

SolveLimits solve_limits(const SoodeLimits& l, const Deadline& d, const Rational& free_value = 0) {
    SolveLimits s;
    s.max_degree = l.groebner_degree;
    s.max_basis = l.max_basis;
    s.timeout_seconds = l.timeout_seconds;
    s.outer = d;
    s.free_value = free_value;
    return s;
}

// Fixes the projective scaling: coefficient k of `a` is 1, later ones are 0.
AlgSystem gauge(const AlgSystem& full, const AnsatzPoly& a, std::size_t k) {
    AlgSystem sys;
    sys.unknowns = full.unknowns;
    for (const auto& e : full.equations) {
        SysPoly s = e.substitute(a.symbols[k], Rational(1));
        for (std::size_t j = k + 1; j < a.symbols.size(); ++j) s = s.substitute(a.symbols[j], Rational(0));
        sys.add(std::move(s));
    }
    return sys;
}

void apply_gauge(std::vector<Rational>& values, const AnsatzPoly& a, std::size_t k) {
    values[static_cast<std::size_t>(a.symbols[k])] = 1;
    for (std::size_t j = k + 1; j < a.symbols.size(); ++j) values[static_cast<std::size_t>(a.symbols[j])] = 0;
}

// Integer powers of candidate factors solving both R conditions in log form.
std::optional<RatFun> exponent_route(const std::vector<Poly>& factors, const RatFun& S, const RatFun& phi) {
    if (factors.empty()) return std::nullopt;
    const std::size_t n = factors.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));

    // sum n_i terms[i] = rhs, cleared to one polynomial identity.
    auto equation = [&](const std::vector<RatFun>& terms, const RatFun& rhs) {
        Poly L = rhs.den();
        for (const auto& t : terms) L = lcm(L, t.den());
        AnsatzExpr e = -lift(rhs.num() * *divide_exact(L, rhs.den()));
        for (std::size_t i = 0; i < n; ++i)
            e += lift(terms[i].num() * *divide_exact(L, terms[i].den())) * AnsatzExpr(SysPoly::var(static_cast<int>(i)));
        return collect_system(e, names);
    };

    std::vector<RatFun> d_terms, sr_terms;
    for (const auto& f : factors) {
        const RatFun F(f);
        d_terms.push_back(total_D(F, phi) / F);
        sr_terms.push_back((F.derivative(Var::y) - S * F.derivative(Var::yp)) / F);
    }
    AlgSystem sys = equation(d_terms, -(S + phi.derivative(Var::yp)));
    const AlgSystem sys2 = equation(sr_terms, S.derivative(Var::yp));
    for (const auto& e : sys2.equations) sys.add(e);

    for (const Rational& free_value : {Rational(0), Rational(1)}) {
        SolutionSet sol;
        try {
            sol = solve_linear(sys, free_value);
        } catch (const EmptySolution&) {
            return std::nullopt;
        }
        const auto& values = sol.branches.front().values;
        if (!std::all_of(values.begin(), values.end(), [](const Rational& q) { return q.get_den() == 1; })) continue;
        RatFun R(1);
        for (std::size_t i = 0; i < n; ++i) R *= RatFun(factors[i]).pow(static_cast<int>(values[i].get_num().get_si()));
        if (residual_R(S, R, phi).is_zero() && residual_SR(S, R).is_zero()) return R;
    }
    return std::nullopt;
}

std::vector<Poly> factor_candidates(const Poly& p) {
    std::vector<Poly> out;
    for (const auto& sf : squarefree_decomposition(p).second)
        if (!sf.factor.is_constant()) out.push_back(sf.factor);
    return out;
}

void add_distinct(std::vector<Poly>& into, const Poly& p) {
    if (p.is_constant()) return;
    const Poly q = primitive(p);
    if (std::find(into.begin(), into.end(), q) == into.end()) into.push_back(q);
}

std::size_t monomial_count(const SRPair& p) {
    return p.S.num().size() + p.S.den().size() + p.R.num().size() + p.R.den().size();
}

}  // namespace

VectorField soode_field(const SOODE& ode) { return {{ode.N, ode.N * kYp, ode.M}}; }

RatFun residual_S(const RatFun& S, const RatFun& phi) {
    return total_D(S, phi) + phi.derivative(Var::y) - S * phi.derivative(Var::yp) - S * S;
}

RatFun residual_R(const RatFun& S, const RatFun& R, const RatFun& phi) {
    return total_D(R, phi) + R * (S + phi.derivative(Var::yp));
}

RatFun residual_SR(const RatFun& S, const RatFun& R) {
    return R.derivative(Var::y) - R.derivative(Var::yp) * S - S.derivative(Var::yp) * R;
}

RatFun residual_DRS(const SRPair& p) { return total_D(p.R * p.S, p.phi) + p.R * p.phi.derivative(Var::y); }

bool check_DRS(const SRPair& p) { return residual_DRS(p).is_zero(); }

bool verify_pair(const SRPair& p) {
    return !p.R.is_zero() && residual_S(p.S, p.phi).is_zero() && residual_R(p.S, p.R, p.phi).is_zero() &&
           residual_SR(p.S, p.R).is_zero();
}

RatFun normalize_R(const RatFun& R) {
    if (R.is_zero()) return R;
    return R * RatFun(Rational(1) / R.num().trailing_term().coeff);
}

std::vector<RatFun> find_S(const SOODE& ode, int deg, const SoodeLimits& limits, const Deadline& outer) {
    const Deadline deadline = Deadline(limits.timeout_seconds).min(outer);
    SymbolTable table;
    const AnsatzPoly Sn = make_ansatz(table, "a", deg, limits.shape, kOdeVars);
    const AnsatzPoly Sd = make_ansatz(table, "b", deg, limits.shape, kOdeVars);
    const VectorField F = soode_field(ode);
    const AnsatzExpr sn = Sn.expr(), sd = Sd.expr();
    // N (DN[Sn] Sd - Sn DN[Sd]) + Sd^2 (M_y N - M N_y) - Sn Sd (M_y' N - M N_y') - Sn^2 N^2 = 0
    const AnsatzExpr residual = lift(ode.N) * (F.apply(sn) * sd - sn * F.apply(sd)) + sd * sd * lift(phi_y_num(ode)) -
                                sn * sd * lift(phi_yp_num(ode)) - sn * sn * lift(ode.N * ode.N);
    const AlgSystem full = collect_system(residual, table.names);
    const RatFun phi = ode.phi();

    std::vector<RatFun> out;
    std::optional<LimitExceeded> failure;
    for (std::size_t k = Sd.symbols.size(); k-- > 0;) {
        const AlgSystem sys = gauge(full, Sd, k);
        SolutionSet sol;
        try {
            sol = solve_poly(sys, solve_limits(limits, deadline));
        } catch (const LimitExceeded& e) {
            failure = e;
            if (deadline.expired()) break;
            continue;
        }
        for (auto b : sol.branches) {
            apply_gauge(b.values, Sd, k);
            const Poly den = Sd.instantiate(b.values);
            if (den.is_zero()) continue;
            const RatFun S(Sn.instantiate(b.values), den);
            if (std::find(out.begin(), out.end(), S) != out.end()) continue;
            if (!residual_S(S, phi).is_zero()) throw InternalError("solver returned a non-solution of the S condition");
            out.push_back(S);
        }
    }
    if (out.empty() && failure) throw *failure;
    std::sort(out.begin(), out.end(), [](const RatFun& a, const RatFun& b) {
        const auto na = a.num().size() + a.den().size(), nb = b.num().size() + b.den().size();
        if (na != nb) return na < nb;
        if (a.den() != b.den()) return poly_less(a.den(), b.den());
        return poly_less(a.num(), b.num());
    });
    return out;
}

std::vector<Poly> soode_darboux_candidates(const SOODE& ode, int degree, const SolveLimits& limits) {
    const VectorField F = soode_field(ode);
    std::vector<Poly> out;
    for (const auto& d : darboux_polynomials(F, kOdeVars, degree, std::max(0, F.degree() - 1), limits))
        for (const auto& f : factor_candidates(d.f)) add_distinct(out, f);
    return out;
}

std::optional<RatFun> find_R_darboux(const SOODE& ode, const RatFun& S, const std::vector<Poly>& extra) {
    // An irreducible eigenpolynomial of S_d N^2 D divides S_d N or is an
    // eigenpolynomial of N D.
    std::vector<Poly> factors;
    for (const auto& f : factor_candidates(S.den() * ode.N)) add_distinct(factors, f);
    for (const auto& f : extra) add_distinct(factors, f);
    auto R = exponent_route(factors, S, ode.phi());
    if (R) return normalize_R(*R);
    return std::nullopt;
}

std::vector<RatFun> find_R_direct(const SOODE& ode, const RatFun& S, int deg, const SoodeLimits& limits,
                                  const Deadline& outer) {
    const Deadline deadline = Deadline(limits.timeout_seconds).min(outer);
    const RatFun phi = ode.phi();
    std::vector<RatFun> out;
    // S_d N (DN[R_n] R_d - R_n DN[R_d]) + R_n R_d (S_n N^2 + S_d (M_y' N - M N_y')) = 0
    SymbolTable table;
    const AnsatzPoly Rn = make_ansatz(table, "r", deg, limits.shape, kOdeVars);
    const AnsatzPoly Rd = make_ansatz(table, "s", deg, limits.shape, kOdeVars);
    const VectorField F = soode_field(ode);
    const AnsatzExpr rn = Rn.expr(), rd = Rd.expr();
    const AnsatzExpr residual = lift(S.den() * ode.N) * (F.apply(rn) * rd - rn * F.apply(rd)) +
                                rn * rd * lift(S.num() * ode.N * ode.N + S.den() * phi_yp_num(ode));
    const AlgSystem full = collect_system(residual, table.names);
    std::optional<LimitExceeded> failure;
    for (std::size_t k = Rd.symbols.size(); k-- > 0;) {
        const AlgSystem sys = gauge(full, Rd, k);
        for (const Rational& free_value : {Rational(0), Rational(1)}) {
            SolutionSet sol;
            try {
                sol = solve_poly(sys, solve_limits(limits, deadline, free_value));
            } catch (const LimitExceeded& e) {
                failure = e;
                break;
            }
            bool zero_numerator = false;
            for (auto b : sol.branches) {
                apply_gauge(b.values, Rd, k);
                const Poly num = Rn.instantiate(b.values);
                if (num.is_zero()) {
                    zero_numerator = zero_numerator || !b.free.empty();
                    continue;
                }
                const RatFun R = normalize_R(RatFun(num, Rd.instantiate(b.values)));
                if (residual_R(S, R, phi).is_zero() && residual_SR(S, R).is_zero() &&
                    std::find(out.begin(), out.end(), R) == out.end())
                    out.push_back(R);
            }
            if (!zero_numerator) break;
        }
        if (deadline.expired()) break;
    }
    if (out.empty() && failure) throw *failure;
    return out;
}

std::vector<RatFun> find_R(const SOODE& ode, const RatFun& S, int deg, const SoodeLimits& limits,
                           const Deadline& outer, int darboux_degree) {
    const Deadline deadline = Deadline(limits.timeout_seconds).min(outer);
    if (auto R = find_R_darboux(ode, S)) return {*R};
    if (darboux_degree > 0) {
        try {
            const auto extra = soode_darboux_candidates(ode, darboux_degree, solve_limits(limits, deadline));
            if (auto R = find_R_darboux(ode, S, extra)) return {*R};
        } catch (const LimitExceeded&) {
            if (deadline.expired()) throw;
        }
    }
    return find_R_direct(ode, S, deg, limits, deadline);
}

void rank_pairs(std::vector<SRPair>& pairs) {
    std::stable_sort(pairs.begin(), pairs.end(), [](const SRPair& a, const SRPair& b) {
        const auto ma = monomial_count(a), mb = monomial_count(b);
        if (ma != mb) return ma < mb;
        const std::array<const Poly*, 4> pa = {&a.S.num(), &a.S.den(), &a.R.num(), &a.R.den()};
        const std::array<const Poly*, 4> pb = {&b.S.num(), &b.S.den(), &b.R.num(), &b.R.den()};
        for (std::size_t i = 0; i < 4; ++i)
            if (*pa[i] != *pb[i]) return poly_less(*pa[i], *pb[i]);
        return false;
    });
}

SearchReport search(const SOODE& ode, const SoodeLimits& limits, std::vector<std::string>* warnings) {
    SearchReport report;
    const RatFun phi = ode.phi();
    auto warn = [&](const std::string& w) {
        report.warnings.push_back(w);
        if (warnings) warnings->push_back(w);
    };
    auto accept = [&](const RatFun& S, const RatFun& R, std::vector<SRPair>& found) {
        SRPair p{S, R, phi};
        if (!verify_pair(p)) return;
        if (!check_DRS(p)) throw InternalError("D[RS] identity failed for a verified pair");
        if (std::find(report.pairs.begin(), report.pairs.end(), p) == report.pairs.end() &&
            std::find(found.begin(), found.end(), p) == found.end())
            found.push_back(std::move(p));
    };

    int last_s = 0;
    std::vector<RatFun> Ss;
    for (int d = 1; d <= limits.max_degree; ++d) {
        const int s_deg = std::min(d, std::max(1, limits.s_degree));
        const int r_deg = std::min(d, std::max(1, limits.r_degree));
        if (s_deg != last_s) {
            try {
                Ss = find_S(ode, s_deg, limits);
            } catch (const LimitExceeded& e) {
                warn("S search at degree " + std::to_string(s_deg) + ": " + e.what());
                Ss.clear();
            }
            last_s = s_deg;
        }
        std::vector<SRPair> found;
        for (const auto& S : Ss)
            if (auto R = find_R_darboux(ode, S)) accept(S, *R, found);
        if (found.empty() && !Ss.empty()) {
            const Deadline stage(limits.timeout_seconds);
            try {
                const auto extra = soode_darboux_candidates(ode, d, solve_limits(limits, stage));
                for (const auto& S : Ss)
                    if (auto R = find_R_darboux(ode, S, extra)) accept(S, *R, found);
            } catch (const LimitExceeded& e) {
                warn("Darboux search at degree " + std::to_string(d) + ": " + e.what());
            }
        }
        if (found.empty() && !Ss.empty()) {
            const Deadline stage(limits.timeout_seconds);
            for (const auto& S : Ss) {
                try {
                    for (const auto& R : find_R_direct(ode, S, r_deg, limits, stage)) accept(S, R, found);
                } catch (const LimitExceeded& e) {
                    warn("R ansatz at degree " + std::to_string(r_deg) + " for S = " + render(S) + ": " + e.what());
                }
                if (stage.expired()) break;
            }
        }
        for (auto& p : found) report.pairs.push_back(std::move(p));
        if (!report.pairs.empty() && report.degree == 0) report.degree = d;
        if (!report.pairs.empty() && !limits.all_degrees) break;
    }
    if (report.pairs.empty()) throw NothingFound(limits.max_degree);
    rank_pairs(report.pairs);
    return report;
}

}  // namespace ps2
