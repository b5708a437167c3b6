#include <catch_amalgamated.hpp>

#include <random>

#include "ps2/algsys.hpp"
#include "ps2/roots.hpp"

using namespace ps2;

namespace {

SysPoly u(int i) { return SysPoly::var(i); }

AlgSystem system_of(std::vector<std::string> names, std::vector<SysPoly> eqs) {
    AlgSystem s;
    s.unknowns = std::move(names);
    for (auto& e : eqs) s.add(std::move(e));
    return s;
}

bool satisfies(const AlgSystem& s, const SolutionBranch& b) {
    for (const auto& e : s.equations)
        if (!is_zero(e.evaluate(b.values))) return false;
    return true;
}

}  // namespace

TEST_CASE("unknown monomials use lex order") {
    CHECK(SysMono::of(0) > SysMono::of(1, 5));
    CHECK(SysMono::of(0, 2) > SysMono::of(0) * SysMono::of(1));
    CHECK(SysMono::of(1) > SysMono());
    CHECK((SysMono::of(0) * SysMono::of(2)).exponent(2) == 1);
    CHECK(SysMono::lcm(SysMono::of(0, 2), SysMono::of(0) * SysMono::of(1)) == SysMono::of(0, 2) * SysMono::of(1));
}

TEST_CASE("sys poly arithmetic and substitution") {
    const SysPoly p = (u(0) + 1) * (u(0) - 1);
    CHECK(p == u(0) * u(0) - 1);
    CHECK(p.substitute(0, u(1) + 1) == u(1) * u(1) + u(1) * 2);
    CHECK(*divide_exact(p, u(0) - 1) == u(0) + 1);
    CHECK_FALSE(divide_exact(p, u(1)).has_value());
    CHECK(p.evaluate({Rational(3)}) == 8);
}

TEST_CASE("collect_system matches coefficients") {
    const std::vector<std::string> names = {"a", "b"};
    const AnsatzExpr residual = AnsatzExpr::monomial(Monomial::of(Var::x), u(0) - 1) +
                                AnsatzExpr::monomial(Monomial::of(Var::y), u(1));
    const AlgSystem sys = collect_system(residual, names);
    REQUIRE(sys.equations.size() == 2);
    CHECK(sys.equations[0] == u(0) - 1);
    CHECK(sys.equations[1] == u(1));
    CHECK(sys.kinds[0] == EquationKind::linear);

    CHECK(collect_system(AnsatzExpr(), names).equations.empty());
    const AnsatzExpr bad_den = AnsatzExpr::monomial(Monomial(), u(0));
    CHECK_THROWS_AS(collect_system(residual, bad_den, names), InternalError);
    CHECK_THROWS_AS(collect_system(AnsatzExpr::monomial(Monomial(), u(5)), names), InternalError);
}

TEST_CASE("ansatz enumeration is canonical") {
    SymbolTable table;
    const std::array<Var, 2> xy = {Var::x, Var::y};
    const AnsatzPoly total = make_ansatz(table, "a", 1, AnsatzShape::total, xy);
    REQUIRE(total.monomials.size() == 3);
    CHECK(total.monomials[0] == Monomial::of(Var::x));
    CHECK(total.monomials[2] == Monomial());
    CHECK(table.names[0] == "a0");
    const AnsatzPoly box = make_ansatz(table, "b", 2, AnsatzShape::box, kOdeVars);
    CHECK(box.monomials.size() == 27);
    CHECK(box.symbols.front() == 3);
}

TEST_CASE("solve_linear") {
    // n1 + n2 = -2: one free parameter.
    const AlgSystem s1 = system_of({"n1", "n2"}, {u(0) + u(1) + 2});
    const auto r1 = solve_linear(s1);
    REQUIRE(r1.branches.size() == 1);
    CHECK(r1.branches[0].free == std::vector<int>{1});
    CHECK(satisfies(s1, r1.branches[0]));
    CHECK(solve_linear(s1, Rational(-1)).branches[0].values == std::vector<Rational>{-1, -1});

    CHECK_THROWS_AS(solve_linear(system_of({"a"}, {u(0) - 1, u(0) - 2})), EmptySolution);

    const auto r3 = solve_linear(system_of({"a"}, {}));
    CHECK(r3.branches[0].free == std::vector<int>{0});
}

TEST_CASE("solve_poly on small systems") {
    const auto r = solve_poly(system_of({"a", "b"}, {u(0) * u(0) - 1, u(1) - u(0)}));
    REQUIRE(r.branches.size() == 2);
    std::set<std::vector<Rational>> got;
    for (const auto& b : r.branches) got.insert(b.values);
    CHECK(got == std::set<std::vector<Rational>>{{1, 1}, {-1, -1}});

    const auto irr = solve_poly(system_of({"a"}, {u(0) * u(0) + 1}));
    CHECK(irr.branches.empty());
    CHECK(irr.irrational_branch);

    // Perfect square residue and a product of linear forms.
    const auto sq = solve_poly(system_of({"a", "b"}, {(u(0) + u(1)) * (u(0) + u(1)), u(0) * u(1) + 4}));
    REQUIRE(sq.branches.size() == 2);
    for (const auto& b : sq.branches) CHECK(b.values[0] == -b.values[1]);

    // Bilinear Darboux-type system with a free family.
    const auto fam = solve_poly(system_of({"a", "c"}, {u(1) * u(0) - u(0)}));
    for (const auto& b : fam.branches) CHECK(is_zero(b.values[1] * b.values[0] - b.values[0]));
    CHECK(!fam.branches.empty());
}

TEST_CASE("Groebner basis is a basis") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-3, 3), var(0, 2), deg(0, 2);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<SysPoly> polys;
        for (int k = 0; k < 3; ++k) {
            SysPoly p;
            for (int t = 0; t < 3; ++t) {
                SysMono m;
                for (int d = deg(rng); d > 0; --d) m = m * SysMono::of(var(rng));
                p += SysPoly::from_terms({{m, coef(rng)}});
            }
            polys.push_back(p);
        }
        const auto G = groebner_basis(polys, SolveLimits{}, Deadline(10.0));
        for (std::size_t i = 0; i < G.size(); ++i)
            for (std::size_t j = i + 1; j < G.size(); ++j) CHECK(normal_form(s_polynomial(G[i], G[j]), G).is_zero());
        for (const auto& p : polys) CHECK(normal_form(p, G).is_zero());
    }
}

TEST_CASE("solve_poly agrees with solve_linear on linear systems") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<SysPoly> eqs;
        for (int k = 0; k < 3; ++k) {
            SysPoly e(coef(rng));
            for (int v = 0; v < 4; ++v) e += u(v).scaled(coef(rng));
            eqs.push_back(e);
        }
        const AlgSystem s = system_of({"a", "b", "c", "d"}, eqs);
        std::optional<SolutionSet> lin;
        try {
            lin = solve_linear(s);
        } catch (const EmptySolution&) {
        }
        const auto poly = solve_poly(s);
        if (!lin) {
            CHECK(poly.branches.empty());
            continue;
        }
        REQUIRE(poly.branches.size() == 1);
        CHECK(satisfies(s, poly.branches[0]));
        CHECK(poly.branches[0].free.size() == lin->branches[0].free.size());
    }
}

TEST_CASE("solve_poly finds every rational point of small zero-dimensional systems") {
    // Planted roots: prod (u0 - r_i) = 0 and u1 = u0^2 - 1, u2 * u0 = u1.
    const auto r = solve_poly(system_of({"a", "b", "c"}, {(u(0) - 2) * (u(0) + 1) * (u(0) * 3 - 1),
                                                         u(1) - u(0) * u(0) + 1, u(2) * u(0) - u(1)}));
    std::set<Rational> a_values;
    for (const auto& b : r.branches) a_values.insert(b.values[0]);
    CHECK(a_values == std::set<Rational>{2, -1, make_rational(1, 3)});
}

TEST_CASE("rational roots") {
    CHECK(rational_roots({-1, 0, 1}) == std::vector<Rational>{-1, 1});
    CHECK(rational_roots({1, 0, 1}).empty());
    CHECK(rational_roots({0, 0, 3}) == std::vector<Rational>{0});
    // (6t - 1)(t + 4)(t^2 + 2)
    CHECK(rational_roots({-8, 46, 8, 23, 6}) == std::vector<Rational>{-4, make_rational(1, 6)});
    CHECK(deflate({-1, 0, 1}, {1}) == std::vector<Rational>{1, 1});
}

TEST_CASE("timeouts surface as LimitExceeded") {
    SolveLimits lim;
    lim.timeout_seconds = 1e-9;
    CHECK_THROWS_AS(solve_poly(system_of({"a"}, {u(0) * u(0) - 1}), lim), LimitExceeded);
}
