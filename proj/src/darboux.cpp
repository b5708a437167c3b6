#include "ps2/darboux.hpp"

#include <algorithm>

#include "ps2/elem_invariant.hpp"
#include "ps2/poly_algebra.hpp"

namespace ps2 {

int VectorField::degree() const {
    int d = -1;
    for (const auto& a : coeff) d = std::max(d, a.degree());
    return d;
}

std::vector<Var> VectorField::variables() const {
    std::vector<Var> out;
    for (Var v : kOdeVars) {
        bool used = !coeff[static_cast<std::size_t>(index(v))].is_zero();
        for (const auto& a : coeff) used = used || a.depends_on(v);
        if (used) out.push_back(v);
    }
    return out;
}

std::vector<DarbouxPoly> darboux_polynomials(const VectorField& field, std::span<const Var> vars, int degree,
                                             int cofactor_degree, const SolveLimits& limits) {
    SymbolTable table;
    const AnsatzPoly f = make_ansatz(table, "f", degree, AnsatzShape::total, vars);
    const AnsatzPoly g = make_ansatz(table, "g", std::max(0, cofactor_degree), AnsatzShape::total, vars);
    const AnsatzExpr fe = f.expr();
    const AnsatzExpr residual = field.apply(fe) - g.expr() * fe;
    const AlgSystem full = collect_system(residual, table.names);
    const Deadline deadline = Deadline(limits.timeout_seconds).min(limits.outer);

    std::vector<DarbouxPoly> out;
    auto accept = [&](const Poly& candidate) {
        if (candidate.is_constant()) return false;
        const Poly p = primitive(candidate);
        const auto q = divide_exact(field.apply(p), p);
        if (!q) return false;
        if (std::find_if(out.begin(), out.end(), [&](const DarbouxPoly& d) { return d.f == p; }) == out.end())
            out.push_back({p, *q});
        return true;
    };

    // Gauge: the trailing nonzero coefficient of f is 1.
    for (std::size_t k = 0; k < f.monomials.size(); ++k) {
        AlgSystem sys;
        sys.unknowns = full.unknowns;
        for (const auto& e : full.equations) {
            SysPoly s = e.substitute(f.symbols[k], Rational(1));
            for (std::size_t j = k + 1; j < f.monomials.size(); ++j) s = s.substitute(f.symbols[j], Rational(0));
            sys.add(std::move(s));
        }
        for (const Rational& free_value : {Rational(0), Rational(1)}) {
            SolveLimits lim = limits;
            lim.free_value = free_value;
            lim.outer = deadline;
            const SolutionSet sol = solve_poly(sys, lim);
            bool need_retry = false;
            for (const auto& b : sol.branches) {
                auto values = b.values;
                values[static_cast<std::size_t>(f.symbols[k])] = 1;
                for (std::size_t j = k + 1; j < f.monomials.size(); ++j) values[static_cast<std::size_t>(f.symbols[j])] = 0;
                if (!accept(f.instantiate(values)) && !b.free.empty()) need_retry = true;
            }
            if (!need_retry) break;
        }
    }
    std::sort(out.begin(), out.end(), [](const DarbouxPoly& a, const DarbouxPoly& b) { return poly_less(a.f, b.f); });
    return out;
}

}  // namespace ps2
