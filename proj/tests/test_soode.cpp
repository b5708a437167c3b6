#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "generators.hpp"
#include "ps2/frontend.hpp"
#include "ps2/ps_soode.hpp"

using namespace ps2;

namespace {

const char* const kEx1 = "y'' = -y";
const char* const kEx2 = "y'' = y'*(3*y'*x + y)/(x*y)";
const char* const kEx3 = "y'' = (x^2*y'^2 + y^2 - 1)/(x^2*y)";

bool contains(const std::vector<RatFun>& v, const RatFun& f) { return std::find(v.begin(), v.end(), f) != v.end(); }

// Equal up to a nonzero rational factor.
bool proportional(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return (a / b).is_constant();
}

}  // namespace

TEST_CASE("find_S on the worked examples") {
    SoodeLimits lim;
    CHECK(contains(find_S(parse_soode(kEx1), 1, lim), parse_ratfun("y/y'")));
    CHECK(contains(find_S(parse_soode(kEx2), 1, lim), parse_ratfun("-3*y'/y")));
    CHECK(contains(find_S(parse_soode(kEx3), 2, lim), parse_ratfun("(-x^2*y'^2 - x*y*y' + 1)/(x*y^2 + x^2*y*y')")));
}

TEST_CASE("find_R on the worked examples") {
    SoodeLimits lim;
    auto has = [](const std::vector<RatFun>& rs, const RatFun& want) {
        return std::any_of(rs.begin(), rs.end(), [&](const RatFun& r) { return proportional(r, want); });
    };
    CHECK(has(find_R(parse_soode(kEx1), parse_ratfun("y/y'"), 1, lim), parse_ratfun("y'")));
    CHECK(has(find_R(parse_soode(kEx2), parse_ratfun("-3*y'/y"), 1, lim), parse_ratfun("1/(x*y^3)")));
    CHECK(has(find_R(parse_soode(kEx3), parse_ratfun("(-x^2*y'^2 - x*y*y' + 1)/(x*y^2 + x^2*y*y')"), 2, lim),
              parse_ratfun("(y + x*y')/(x*y^2)")));
}

TEST_CASE("direct R ansatz agrees with the Darboux route on example 1") {
    SoodeLimits lim;
    const auto rs = find_R_direct(parse_soode(kEx1), parse_ratfun("y/y'"), 1, lim);
    REQUIRE(!rs.empty());
    for (const auto& r : rs) CHECK(verify_pair({parse_ratfun("y/y'"), r, parse_ratfun("-y")}));
}

TEST_CASE("check_DRS") {
    const RatFun phi = parse_ratfun("-y");
    CHECK(check_DRS({parse_ratfun("y/y'"), parse_ratfun("y'"), phi}));
    CHECK(check_DRS({parse_ratfun("-3*y'/y"), parse_ratfun("1/(x*y^3)"), parse_ratfun("y'*(3*y'*x + y)/(x*y)")}));
    CHECK_FALSE(check_DRS({parse_ratfun("y/y'"), parse_ratfun("y"), phi}));
}

TEST_CASE("search on the worked examples") {
    SoodeLimits lim;
    const SearchReport r1 = search(parse_soode(kEx1), lim);
    CHECK(r1.degree == 1);
    CHECK(r1.pairs.front() == SRPair{parse_ratfun("y/y'"), parse_ratfun("y'"), parse_ratfun("-y")});

    const SearchReport r2 = search(parse_soode(kEx2), lim);
    CHECK(r2.degree <= 2);
    CHECK(std::any_of(r2.pairs.begin(), r2.pairs.end(), [](const SRPair& p) {
        return p.S == parse_ratfun("-3*y'/y") && proportional(p.R, parse_ratfun("1/(x*y^3)"));
    }));

    const SearchReport r4 = search(parse_soode("y'' = y'^2/y"), lim);
    REQUIRE(!r4.pairs.empty());
    for (const auto& p : r4.pairs) CHECK(verify_pair(p));
}

TEST_CASE("every accepted pair passes all residuals exactly") {
    SoodeLimits lim;
    for (const char* ode : {kEx1, kEx2, "y'' = y'^2/y", "y'' = 1"}) {
        for (const auto& p : search(parse_soode(ode), lim).pairs) {
            CHECK(residual_S(p.S, p.phi).is_zero());
            CHECK(residual_R(p.S, p.R, p.phi).is_zero());
            CHECK(residual_SR(p.S, p.R).is_zero());
            CHECK(check_DRS(p));
            CHECK(normalize_R(p.R) == p.R);
        }
    }
}

TEST_CASE("scaling R keeps a pair valid") {
    const SRPair p{parse_ratfun("y/y'"), parse_ratfun("y'"), parse_ratfun("-y")};
    for (int c : {-3, 2, 7}) CHECK(verify_pair({p.S, p.R * RatFun(c), p.phi}));
    CHECK(normalize_R(p.R * RatFun(-5)) == p.R);
}

TEST_CASE("planted pairs verify and perturbed S is rejected") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
        const auto planted = testing::planted_soode(rng);
        INFO(render(planted.ode));
        CHECK(verify_pair(planted.pair));
        CHECK(check_DRS(planted.pair));
        const RatFun bumped = planted.pair.S + RatFun(Poly(1)) / RatFun(planted.pair.S.den());
        CHECK_FALSE(verify_pair({bumped, planted.pair.R, planted.pair.phi}));
    }
}

TEST_CASE("search finds a pair for a planted equation") {
    const SOODE ode = parse_soode("y'' = -(y' + y + y'*(y' + x))/(x + y)");
    const SearchReport r = search(ode, SoodeLimits{});
    REQUIRE(!r.pairs.empty());
    CHECK(r.degree == 1);
}

TEST_CASE("no pair at the bound is NothingFound") {
    SoodeLimits lim;
    lim.max_degree = 1;
    CHECK_THROWS_AS(search(parse_soode("y'' = 6*y^2 + x"), lim), NothingFound);
}
