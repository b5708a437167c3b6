// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "ps2/frontend.hpp"
#include "ps2/integrate.hpp"
#include "ps2/pipeline.hpp"
#include "ps2/poly_algebra.hpp"
#include "ps2/ps_foode.hpp"
#include "ps2/verifier.hpp"

using namespace ps2;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

bool proportional(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    const RatFun q = a / b;
    return q.num().is_constant() && q.den().is_constant();
}

struct Timed {
    SolveReport report;
    double seconds;
};

Timed timed_reduce(const std::string& ode) {
    const auto t0 = Clock::now();
    SolveReport r = run_reduce(ode, PipelineOptions{});
    return {std::move(r), seconds_since(t0)};
}

bool invariant_matches(const SolveReport& r, const std::string& expect) {
    return r.status == ReduceStatus::verified && r.invariant && equivalent(*r.invariant, parse_invariant(expect));
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

bool residuals_zero(const SRPair& p) {
    return residual_S(p.S, p.phi).is_zero() && residual_R(p.S, p.R, p.phi).is_zero() &&
           residual_SR(p.S, p.R).is_zero() && residual_DRS(p).is_zero() && check_DRS(p);
}

std::vector<CorpusEntry> load_corpus() {
    std::vector<CorpusEntry> all;
    for (const char* file : {"worked_examples.txt", "extra.txt"}) {
        std::ifstream in(std::string(PS2_CORPUS_DIR) + "/" + file);
        std::stringstream ss;
        ss << in.rdbuf();
        for (auto& e : parse_corpus(ss.str())) all.push_back(std::move(e));
    }
    return all;
}

const char* kEx1 = "y'' = -y";
const char* kEx2 = "y'' = y'*(3*y'*x + y)/(x*y)";
const char* kEx3 = "y'' = (x^2*y'^2 + y^2 - 1)/(x^2*y)";

}  // namespace

int main() {
    const std::vector<CorpusEntry> corpus = load_corpus();
    std::vector<Timed> runs;
    for (const auto& e : corpus) runs.push_back(timed_reduce(e.ode));
    auto find_run = [&](const char* ode) -> const Timed& {
        const SOODE target = parse_soode(ode);
        for (const auto& r : runs)
            if (r.report.ode == target) return r;
        runs.push_back(timed_reduce(ode));
        return runs.back();
    };

    std::vector<std::function<Outcome()>> criteria;

    criteria.push_back([&] {
        const Timed& t = find_run(kEx1);
        const SolveReport& r = t.report;
        const bool pair = std::any_of(r.pairs.begin(), r.pairs.end(), [](const SRPair& p) {
            return p.S == parse_ratfun("y/y'") && proportional(p.R, parse_ratfun("y'"));
        });
        const bool ok = pair && r.degree == 1 && invariant_matches(r, "y^2 + y'^2") && t.seconds < 5;
        return Outcome{ok, "y'' = -y, degree " + std::to_string(r.degree) + ", " + fmt("%.2f s", t.seconds)};
    });

    criteria.push_back([&] {
        const Timed& t = find_run(kEx2);
        const SolveReport& r = t.report;
        const bool pair = std::any_of(r.pairs.begin(), r.pairs.end(), [](const SRPair& p) {
            return proportional(p.S, parse_ratfun("-3*y'/y")) && proportional(p.R, parse_ratfun("1/(x*y^3)"));
        });
        const bool ok = pair && r.degree <= 2 && invariant_matches(r, "y'/(x*y^3)") && t.seconds < 60;
        return Outcome{ok, "Buchdahl equation, degree " + std::to_string(r.degree) + ", " + fmt("%.2f s", t.seconds)};
    });

    criteria.push_back([&] {
        const Timed& t = find_run(kEx3);
        const SolveReport& r = t.report;
        const bool ok = r.degree <= 2 &&
                        invariant_matches(r, "(2*x*y*y' + y^2 + x^2*y'^2 - 1)/(2*x^2*y^2)") && t.seconds < 120;
        return Outcome{ok, "degree " + std::to_string(r.degree) + ", " + fmt("%.2f s", t.seconds)};
    });

    criteria.push_back([&] {
        int checked = 0, bad = 0, planted_searched = 0;
        for (const auto& t : runs)
            for (const auto& p : t.report.pairs) {
                ++checked;
                if (!residuals_zero(p)) ++bad;
            }
        std::mt19937_64 rng(2024);
        SoodeLimits lim;
        lim.max_degree = 2;
        for (int i = 0; i < 20; ++i) {
            const auto planted = testing::planted_soode(rng);
            ++checked;
            if (!residuals_zero(planted.pair)) ++bad;
            try {
                for (const auto& p : search(planted.ode, lim).pairs) {
                    ++checked;
                    if (!residuals_zero(p)) ++bad;
                }
                ++planted_searched;
            } catch (const NothingFound&) {
            } catch (const LimitExceeded&) {
            }
        }
        return Outcome{bad == 0, std::to_string(checked) + " accepted pairs, " + std::to_string(bad) +
                                     " nonzero residuals; search succeeded on " + std::to_string(planted_searched) +
                                     "/20 planted equations"};
    });

    criteria.push_back([&] {
        int emitted = 0, failures = 0, controls_failed = 0;
        double worst = 0;
        const PipelineOptions opt;
        for (const auto& t : runs) {
            const SolveReport& r = t.report;
            if (!r.invariant) continue;
            ++emitted;
            const double drift = max_drift(verify_numeric(*r.invariant, r.ode, opt.trajectories, opt.h, opt.T, opt.seed));
            worst = std::max(worst, drift);
            if (!verify_symbolic(*r.invariant, r.ode) || !(drift < 1e-6)) ++failures;
            // Negative control: I + x drifts by the distance travelled in x.
            ElemInvariant bumped = *r.invariant;
            bumped.z0 = bumped.z0 + RatFun::variable(Var::x);
            const double bumped_drift =
                max_drift(verify_numeric(bumped, r.ode, opt.trajectories, opt.h, opt.T, opt.seed));
            if (verify_symbolic(bumped, r.ode) || bumped_drift < 1e-6) ++controls_failed;
        }
        const bool ok = emitted == static_cast<int>(runs.size()) && failures == 0 && controls_failed == 0;
        return Outcome{ok, std::to_string(emitted) + " invariants, worst drift " + fmt("%.1e", worst) + ", " +
                               std::to_string(controls_failed) + " controls passed wrongly"};
    });

    criteria.push_back([&] {
        bool ok = true;
        std::string detail;
        for (const char* text : {"y' = y/x", "y' = -x/y"}) {
            const FOODE ode = parse_foode(text);
            const Foode1Result r = solve_foode(ode, 2);
            const RatFun R = r.factor.R();
            const RatFun flow = RatFun(ode.N) * r.W.derivative(Var::x) + RatFun(ode.M) * r.W.derivative(Var::y);
            ok = ok && integrating_factor_residual(ode, R).is_zero() && flow.is_zero() && !r.W.derivative(Var::y).is_zero();
            detail += std::string(detail.empty() ? "" : "; ") + text + ": R = " + render(R) + ", W = " + render(r.W);
        }
        return Outcome{ok, detail};
    });

    criteria.push_back([&] {
        std::mt19937_64 rng(500);
        int bad = 0;
        for (int trial = 0; trial < 500; ++trial) {
            // Pairs of degree <= 4: a shared factor of degree <= 2 half of the time.
            const bool shared = trial % 2 == 0;
            const Poly f = shared ? testing::random_nonzero_poly(rng, 2, 3) : Poly(1);
            const Poly a = f * testing::random_nonzero_poly(rng, shared ? 2 : 4, 4);
            const Poly b = f * testing::random_nonzero_poly(rng, shared ? 2 : 4, 4);
            const Poly g = gcd(a, b);
            const auto ca = divide_exact(a, g), cb = divide_exact(b, g);
            bool ok = ca && cb && g * *ca == a && g * *cb == b && gcd(*ca, *cb) == Poly(1);
            if (ok && !f.is_constant()) ok = divides(primitive(f), g);
            // Arithmetic against pointwise evaluation.
            std::array<Rational, kNumVars> pt{};
            for (auto& c : pt) c = make_rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1);
            ok = ok && evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt) &&
                 evaluate(a - b, pt) == evaluate(a, pt) - evaluate(b, pt);
            if (!ok) ++bad;
        }
        int hermite_bad = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const Poly n = testing::random_poly(rng, 3, 4);
            const Poly d1 = testing::random_nonzero_poly(rng, 2, 3);
            const Poly d2 = testing::random_nonzero_poly(rng, 1, 2);
            const RatFun f(n, d1 * d2 * d2);
            for (Var v : kOdeVars) {
                const HermiteSplit s = hermite_reduce(f, v);
                const IntegralResult full = integrate_rational_partial(f, v);
                // Squarefree in v: factors free of v are constants of the field.
                const Poly d = s.h.den();
                const bool squarefree = !d.depends_on(v) || !gcd(d, d.derivative(v)).depends_on(v);
                if (s.g.derivative(v) + s.h != f || !squarefree || full.value.derivative(v) + full.remainder != f)
                    ++hermite_bad;
            }
        }
        return Outcome{bad == 0 && hermite_bad == 0, "500 gcd pairs, " + std::to_string(bad) +
                                                          " mismatches; 300 Hermite round trips, " +
                                                          std::to_string(hermite_bad) + " mismatches"};
    });

    criteria.push_back([&] {
        PipelineOptions opt;
        opt.limits.max_degree = 1;
        opt.limits.timeout_seconds = 10;
        const auto t0 = Clock::now();
        const SolveReport r = run_reduce("y'' = 6*y^2 + x", opt);
        const double s = seconds_since(t0);
        const bool ok = r.status == ReduceStatus::nothing_found && r.exit_code() == 2 && s < opt.limits.timeout_seconds;
        return Outcome{ok, "y'' = 6*y^2 + x at degree 1: " + std::string(to_string(r.status)) + " after " +
                               fmt("%.2f s", s)};
    });

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
