#include <catch_amalgamated.hpp>

#include <random>

#include "generators.hpp"
#include "ps2/frontend.hpp"
#include "ps2/integrate.hpp"
#include "ps2/invariant.hpp"
#include "ps2/poly_algebra.hpp"
#include "ps2/verifier.hpp"

using namespace ps2;

namespace {

ElemInvariant inv(const char* text) { return parse_invariant(text); }

SRPair pair_of(const char* ode, const char* S, const char* R) {
    return {parse_ratfun(S), parse_ratfun(R), parse_soode(ode).phi()};
}

}  // namespace

TEST_CASE("elementary antiderivatives") {
    CHECK(integrate_rational(parse_ratfun("y"), Var::y) == inv("y^2/2"));
    CHECK(integrate_rational(parse_ratfun("1/x"), Var::x) == inv("log(x)"));
    CHECK(integrate_rational(parse_ratfun("1/(1+x^2)"), Var::x) == inv("atan(x)"));
    CHECK(integrate_rational(parse_ratfun("x/(x^2+1)"), Var::x) == inv("log(x^2+1)/2"));
}

TEST_CASE("antiderivatives differentiate back") {
    for (const char* f : {"1/(x^2+2*x+5)", "(3*x^2+1)/(x^3+x)^2", "(x^4 - 3)/(x^2*(x+1)^3)", "y/(x^2+y^2)",
                          "(2*x+y)/((x-y)*(x+2*y))", "1/(x*(x^2+1)^2)", "y'/(x^2*y^3)"}) {
        INFO(f);
        const RatFun g = parse_ratfun(f);
        CHECK(integrate_rational(g, Var::x).derivative(Var::x) == g);
    }
}

TEST_CASE("log parts with residues outside Q are reported") {
    for (const char* f : {"1/(x^2-2)", "1/(x^4+1)", "1/(x*y)"}) {
        const RatFun g = parse_ratfun(f);
        const Var v = g.depends_on(Var::x) && !g.depends_on(Var::y) ? Var::x : Var::y;
        const IntegralResult r = integrate_rational_partial(g, v);
        CHECK_FALSE(r.complete());
        CHECK(r.value.derivative(v) + r.remainder == g);
        CHECK_THROWS_AS(integrate_rational(g, v), UnsupportedIntegral);
    }
}

TEST_CASE("Hermite reduction round trip on random inputs") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        const Poly a = testing::random_nonzero_poly(rng, 3, 4);
        Poly d = testing::random_nonzero_poly(rng, 2, 3);
        if (!d.depends_on(Var::x)) d += var_poly(Var::x);
        const RatFun f(a, d * d * (var_poly(Var::x) + 1));
        const HermiteSplit s = hermite_reduce(f, Var::x);
        INFO(render(f));
        CHECK(s.g.derivative(Var::x) + s.h == f);
        CHECK(gcd(s.h.den(), s.h.den().derivative(Var::x)).degree(Var::x) <= 0);
    }
}

TEST_CASE("invariant of example 1") {
    const SRPair p = pair_of("y'' = -y", "y/y'", "y'");
    const ElemInvariant I = build_invariant(p);
    CHECK(I == inv("y^2 + y'^2"));
    const Gradient g = invariant_gradient(p);
    CHECK(is_closed(g));
}

TEST_CASE("invariant of example 2") {
    const ElemInvariant I = build_invariant(pair_of("y'' = y'*(3*y'*x + y)/(x*y)", "-3*y'/y", "1/(x*y^3)"));
    CHECK(equivalent(I, inv("y'/(y^3*x)")));
    CHECK(I.is_rational());
}

TEST_CASE("invariant of example 3") {
    const char* ode = "y'' = (x^2*y'^2 + y^2 - 1)/(x^2*y)";
    const ElemInvariant I =
        build_invariant(pair_of(ode, "(-x^2*y'^2 - x*y*y' + 1)/(x*y^2 + x^2*y*y')", "(y + x*y')/(x*y^2)"));
    CHECK(equivalent(I, inv("(2*x*y*y' + y^2 + x^2*y'^2 - 1)/(2*x^2*y^2)")));
    CHECK(verify_symbolic(I, parse_soode(ode)));
}

TEST_CASE("gradient contract with raw quadrature") {
    for (const auto& p : {pair_of("y'' = -y", "y/y'", "y'"), pair_of("y'' = y'^2/y", "-y'/y", "1/y"),
                          pair_of("y'' = 1", "-1/x", "x")}) {
        const Gradient g = invariant_gradient(p);
        const std::array<Var, 3> order = {Var::x, Var::y, Var::yp};
        const ElemInvariant F = integrate_gradient(g, order);
        CHECK(F.derivative(Var::x) == g[0]);
        CHECK(F.derivative(Var::y) == g[1]);
        CHECK(F.derivative(Var::yp) == g[2]);
    }
}

TEST_CASE("log-bearing invariants are built") {
    // I = x y'/y - log(y) for y'' = y'^2/y.
    const SOODE ode = parse_soode("y'' = y'^2/y");
    const SRPair p{parse_ratfun("(-x*y' - y)/(x*y)"), parse_ratfun("x/y"), ode.phi()};
    REQUIRE(verify_pair(p));
    const ElemInvariant I = build_invariant(p);
    CHECK_FALSE(I.logs.empty());
    CHECK(verify_symbolic(I, ode));
}

TEST_CASE("planted invariants are recovered") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const auto planted = testing::planted_soode(rng);
        INFO(render(planted.ode));
        const ElemInvariant I = build_invariant(planted.pair);
        CHECK(equivalent(I, ElemInvariant{planted.invariant, {}, {}}));
    }
}

TEST_CASE("non-closed gradients are rejected") {
    const Gradient g = {parse_ratfun("y"), parse_ratfun("0"), parse_ratfun("0")};
    CHECK_FALSE(is_closed(g));
    const std::array<Var, 3> order = {Var::x, Var::y, Var::yp};
    CHECK_THROWS_AS(integrate_gradient(g, order), InternalError);
}

TEST_CASE("reduced equations") {
    const SOODE ex1 = parse_soode("y'' = -y");
    const ReducedODE r1 = reduce(ex1, inv("y^2 + y'^2"));
    REQUIRE(r1.branches.size() == 2);
    CHECK(r1.branches[0].base.is_zero());
    CHECK(r1.branches[0].radicand == parse_ratfun("C1 - y^2"));
    CHECK(r1.explicit_text()[0] == "y' = sqrt(-y^2 + C1)");

    const ReducedODE r2 = reduce(parse_soode("y'' = y'*(3*y'*x + y)/(x*y)"), inv("y'/(x*y^3)"));
    REQUIRE(r2.branches.size() == 1);
    CHECK(r2.branches[0].base == parse_ratfun("C1*x*y^3"));
    CHECK(r2.implicit_text() == "y'/(x*y^3) = C1");

    const ReducedODE r3 = reduce(ex1, inv("x*y'/y - log(y)"));
    CHECK(r3.branches.empty());
    CHECK(r3.implicit_text() == "x*y'/y - log(y) = C1");
}
