#include "ps2/ps_foode.hpp"

#include <algorithm>
#include <map>

#include "ps2/invariant.hpp"

namespace ps2 {

namespace {

constexpr std::array<Var, 2> kPlane = {Var::x, Var::y};

bool all_integer(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

}  // namespace

VectorField foode_field(const FOODE& ode) { return {{ode.N, ode.M, Poly()}}; }

std::vector<DarbouxPoly> find_darboux(const FOODE& ode, int deg, const SolveLimits& limits) {
    if (deg < 1) throw Error("Darboux degree must be at least 1");
    const int cofactor = std::max(0, std::max(ode.M.degree(), ode.N.degree()) - 1);
    return darboux_polynomials(foode_field(ode), kPlane, deg, cofactor, limits);
}

RatFun IntegratingFactor1::R() const {
    RatFun r(1);
    for (const auto& [d, n] : factors) {
        if (n.get_den() != 1) throw UnsupportedIntegral("integrating factor with a fractional exponent is not rational");
        r *= RatFun(d.f).pow(static_cast<int>(n.get_num().get_si()));
    }
    return r;
}

RatFun integrating_factor_residual(const FOODE& ode, const RatFun& R) {
    return (R * RatFun(ode.N)).derivative(Var::x) + (R * RatFun(ode.M)).derivative(Var::y);
}

IntegratingFactor1 find_integrating_factor(const FOODE& ode, const std::vector<DarbouxPoly>& darboux) {
    const Poly div = ode.N.derivative(Var::x) + ode.M.derivative(Var::y);
    const std::size_t n = darboux.size();

    // One row per monomial: sum_i A[m][i] n_i = b[m].
    std::map<Monomial, std::vector<Rational>> rows;
    std::map<Monomial, Rational> rhs;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& t : darboux[i].cofactor.terms()) {
            auto& row = rows[t.mono];
            row.resize(n, Rational(0));
            row[i] = t.coeff;
        }
    for (const auto& t : div.terms()) {
        rows[t.mono].resize(n, Rational(0));
        rhs[t.mono] = -t.coeff;
    }

    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
    AlgSystem sys;
    sys.unknowns = names;
    for (const auto& [m, row] : rows) {
        SysPoly e = -SysPoly(rhs.count(m) ? rhs.at(m) : Rational(0));
        for (std::size_t i = 0; i < n; ++i) e = e + SysPoly::var(static_cast<int>(i)) * SysPoly(row[i]);
        sys.add(std::move(e));
    }

    std::vector<std::vector<Rational>> candidates;
    try {
        for (const Rational& fv : {Rational(0), Rational(-1), Rational(1)})
            candidates.push_back(solve_linear(sys, fv).branches.front().values);
    } catch (const EmptySolution&) {
        throw NoElementaryFactorAtThisDegree();
    }
    // Least-norm solution A^T w with (A A^T) w = b.
    if (!rows.empty()) {
        std::vector<Monomial> keys;
        for (const auto& [m, row] : rows) keys.push_back(m);
        AlgSystem normal;
        for (std::size_t k = 0; k < keys.size(); ++k) normal.unknowns.push_back("w" + std::to_string(k));
        for (std::size_t a = 0; a < keys.size(); ++a) {
            SysPoly e = -SysPoly(rhs.count(keys[a]) ? rhs.at(keys[a]) : Rational(0));
            for (std::size_t b = 0; b < keys.size(); ++b) {
                Rational dot = 0;
                for (std::size_t i = 0; i < n; ++i) dot += rows.at(keys[a])[i] * rows.at(keys[b])[i];
                if (!is_zero(dot)) e = e + SysPoly::var(static_cast<int>(b)) * SysPoly(dot);
            }
            normal.add(std::move(e));
        }
        const auto w = solve_linear(normal).branches.front().values;
        std::vector<Rational> least(n, Rational(0));
        for (std::size_t b = 0; b < keys.size(); ++b)
            for (std::size_t i = 0; i < n; ++i) least[i] += rows.at(keys[b])[i] * w[b];
        candidates.insert(candidates.begin(), least);
    }

    const auto chosen = std::find_if(candidates.begin(), candidates.end(), all_integer);
    const std::vector<Rational>& values = chosen != candidates.end() ? *chosen : candidates.front();
    IntegratingFactor1 out;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_zero(values[i])) out.factors.emplace_back(darboux[i], values[i]);

    // Logarithmic form, then the defining identity when R is rational.
    Poly lhs;
    for (const auto& [d, e] : out.factors) lhs += d.cofactor.scaled(e);
    if (lhs != -div) throw InternalError("integrating factor exponents do not solve the cofactor system");
    if (all_integer(values) && !integrating_factor_residual(ode, out.R()).is_zero())
        throw InternalError("integrating factor check failed");
    return out;
}

ElemInvariant reduce_foode(const FOODE& ode, const IntegratingFactor1& factor) {
    const RatFun R = factor.R();
    const Gradient grad = {R * RatFun(ode.M), -(R * RatFun(ode.N)), RatFun()};
    ElemInvariant W = normalize_scale(canonicalize(integrate_gradient(grad, kPlane)));
    const RatFun dW = RatFun(ode.N) * W.derivative(Var::x) + RatFun(ode.M) * W.derivative(Var::y);
    if (!dW.is_zero()) throw InternalError("first integral check failed");
    return W;
}

Foode1Result solve_foode(const FOODE& ode, int max_degree, const SolveLimits& limits) {
    std::vector<DarbouxPoly> found;
    for (int d = 1; d <= max_degree; ++d) {
        found = find_darboux(ode, d, limits);
        try {
            IntegratingFactor1 factor = find_integrating_factor(ode, found);
            ElemInvariant W = reduce_foode(ode, factor);
            return {found, std::move(factor), std::move(W), d};
        } catch (const NoElementaryFactorAtThisDegree&) {
        } catch (const UnsupportedIntegral&) {
        }
    }
    throw NothingFound(max_degree, "no integrating factor");
}

}  // namespace ps2
