#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ps2/elem_invariant.hpp"
#include "ps2/ode.hpp"

namespace ps2 {

// I_x + y' I_y + phi I_y' as one rational function.
RatFun total_derivative(const ElemInvariant& inv, const SOODE& ode);

bool verify_symbolic(const ElemInvariant& inv, const SOODE& ode);

struct TrajectoryReport {
    std::array<double, 3> initial{};  // x0, y0, y'0
    double h = 0;
    double T = 0;
    std::vector<double> samples;  // I at every step, starting with I(x0)
    double max_drift = 0;         // max |I - I0| / max(1, |I0|)
    bool truncated = false;       // stopped near a singularity
};

// RK4 in x for (y, y') from initial points drawn uniformly in [-2, 2]^3, away
// from zeros of N and of the denominators of I. Trajectory k depends only on
// (seed, k).
std::vector<TrajectoryReport> verify_numeric(const ElemInvariant& inv, const SOODE& ode, int n_trajectories,
                                             double h, double T, std::uint64_t seed);

TrajectoryReport integrate_trajectory(const ElemInvariant& inv, const SOODE& ode, std::array<double, 3> initial,
                                      double h, double T);

double max_drift(const std::vector<TrajectoryReport>& reports);

// Gradients proportional: every 2x2 minor of (grad inv1; grad inv2) vanishes.
bool equivalent(const ElemInvariant& inv1, const ElemInvariant& inv2);

}  // namespace ps2
