#include "ps2/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ps2/poly_algebra.hpp"

namespace ps2 {

namespace {

constexpr double kRejectTolerance = 1e-3;
constexpr double kSingularTolerance = 1e-6;
constexpr double kBlowUp = 1e6;  // |y|, |y'| beyond this: a movable pole is near
// Largest accepted local error per step, relative to the state size:
// max(floor, C h^5), i.e. far above what RK4 makes on a solution with
// moderate derivatives. Beyond it the fixed step no longer resolves the
// solution and a singularity is close.
constexpr double kLocalErrorFloor = 1e-13;
constexpr double kLocalErrorScale = 1e3;


using Point = std::array<double, kNumVars>;

// Smallest magnitude among N and the denominators (and log arguments) of I.
double singular_distance(const ElemInvariant& inv, const SOODE& ode, const Point& p) {
    double m = std::fabs(evaluate(ode.N, p));
    m = std::min(m, std::fabs(evaluate(inv.z0.den(), p)));
    for (const auto& l : inv.logs) m = std::min(m, std::fabs(evaluate(l.arg, p)));
    for (const auto& a : inv.atans) m = std::min(m, std::hypot(evaluate(a.num, p), evaluate(a.den, p)));
    return m;
}

// Signs of N and of the denominators of I; a flip between steps means the
// trajectory passed through a singular set between samples.
std::vector<int> singular_signs(const ElemInvariant& inv, const SOODE& ode, const Point& p) {
    auto sign = [](double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
    std::vector<int> s = {sign(evaluate(ode.N, p)), sign(evaluate(inv.z0.den(), p))};
    for (const auto& l : inv.logs) s.push_back(sign(evaluate(l.arg, p)));
    return s;
}

}  // namespace

RatFun total_derivative(const ElemInvariant& inv, const SOODE& ode) {
    return inv.derivative(Var::x) + RatFun::variable(Var::yp) * inv.derivative(Var::y) +
           ode.phi() * inv.derivative(Var::yp);
}

bool verify_symbolic(const ElemInvariant& inv, const SOODE& ode) { return total_derivative(inv, ode).is_zero(); }

TrajectoryReport integrate_trajectory(const ElemInvariant& inv, const SOODE& ode, std::array<double, 3> initial,
                                      double h, double T) {
    TrajectoryReport rep;
    rep.initial = initial;
    rep.h = h;
    rep.T = T;
    struct State {
        double y, yp;
    };
    bool bad = false;
    auto accel = [&](double x, double y, double yp) {
        const Point p = {x, y, yp, 0};
        const double n = evaluate(ode.N, p);
        if (std::fabs(n) < kSingularTolerance) bad = true;
        return evaluate(ode.M, p) / n;
    };
    auto rk4 = [&](double x, State s, double dt) {
        const double k1y = s.yp, k1p = accel(x, s.y, s.yp);
        const double k2y = s.yp + dt / 2 * k1p, k2p = accel(x + dt / 2, s.y + dt / 2 * k1y, s.yp + dt / 2 * k1p);
        const double k3y = s.yp + dt / 2 * k2p, k3p = accel(x + dt / 2, s.y + dt / 2 * k2y, s.yp + dt / 2 * k2p);
        const double k4y = s.yp + dt * k3p, k4p = accel(x + dt, s.y + dt * k3y, s.yp + dt * k3p);
        return State{s.y + dt / 6 * (k1y + 2 * k2y + 2 * k3y + k4y), s.yp + dt / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)};
    };

    double x = initial[0];
    State s{initial[1], initial[2]};
    const double I0 = inv.evaluate({x, s.y, s.yp, 0});
    rep.samples.push_back(I0);
    const std::vector<int> signs = singular_signs(inv, ode, {x, s.y, s.yp, 0});
    const long steps = std::lround(T / h);
    const double tolerance = std::max(kLocalErrorFloor, kLocalErrorScale * std::pow(h, 5));
    for (long k = 0; k < steps; ++k) {
        const State full = rk4(x, s, h);
        const State half = rk4(x + h / 2, rk4(x, s, h / 2), h / 2);
        // Step doubling: the RK4 local error is about |full - half| * 16/15.
        const double err = std::max(std::fabs(full.y - half.y), std::fabs(full.yp - half.yp));
        const double size = std::max({1.0, std::fabs(s.y), std::fabs(s.yp)});
        if (bad || err > tolerance * size) {
            rep.truncated = true;
            break;
        }
        s = full;
        x = initial[0] + static_cast<double>(k + 1) * h;
        const Point p = {x, s.y, s.yp, 0};
        const double I = inv.evaluate(p);
        if (!std::isfinite(I) || std::fabs(s.y) > kBlowUp || std::fabs(s.yp) > kBlowUp ||
            singular_signs(inv, ode, p) != signs || singular_distance(inv, ode, p) < kSingularTolerance) {
            rep.truncated = true;
            break;
        }
        rep.samples.push_back(I);
    }
    const double scale = std::max(1.0, std::fabs(I0));
    for (double v : rep.samples) rep.max_drift = std::max(rep.max_drift, std::fabs(v - I0) / scale);
    return rep;
}

std::vector<TrajectoryReport> verify_numeric(const ElemInvariant& inv, const SOODE& ode, int n_trajectories,
                                             double h, double T, std::uint64_t seed) {
    std::vector<TrajectoryReport> out;
    for (int k = 0; k < n_trajectories; ++k) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unif(-2.0, 2.0);
        for (int attempt = 0; attempt < 10000; ++attempt) {
            const std::array<double, 3> p0 = {unif(rng), unif(rng), unif(rng)};
            const Point p = {p0[0], p0[1], p0[2], 0};
            if (singular_distance(inv, ode, p) < kRejectTolerance || !std::isfinite(inv.evaluate(p))) continue;
            out.push_back(integrate_trajectory(inv, ode, p0, h, T));
            break;
        }
    }
    return out;
}

double max_drift(const std::vector<TrajectoryReport>& reports) {
    double d = 0;
    for (const auto& r : reports) d = std::max(d, r.max_drift);
    return d;
}

bool equivalent(const ElemInvariant& inv1, const ElemInvariant& inv2) {
    std::array<RatFun, 3> g1, g2;
    for (std::size_t i = 0; i < 3; ++i) {
        g1[i] = inv1.derivative(kOdeVars[i]);
        g2[i] = inv2.derivative(kOdeVars[i]);
    }
    const auto zero = [](const std::array<RatFun, 3>& g) {
        return std::all_of(g.begin(), g.end(), [](const RatFun& f) { return f.is_zero(); });
    };
    if (zero(g1) != zero(g2)) return false;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (g1[i] * g2[j] != g1[j] * g2[i]) return false;
    return true;
}

}  // namespace ps2
