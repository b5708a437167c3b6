#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ps2/algsys.hpp"
#include "ps2/darboux.hpp"
#include "ps2/ode.hpp"

namespace ps2 {

// Verified solution of the three compatibility conditions for y'' = phi.
struct SRPair {
    RatFun S;
    RatFun R;
    RatFun phi;

    bool operator==(const SRPair&) const = default;
};

struct SoodeLimits {
    int s_degree = 2;    // cap on the S ansatz degree
    int r_degree = 2;    // cap on the R ansatz degree
    int max_degree = 4;  // deepening ceiling; also the Darboux degree cap
    double timeout_seconds = 30;  // per stage
    bool all_degrees = false;     // keep deepening after the first success
    AnsatzShape shape = AnsatzShape::box;
    std::size_t max_basis = 500;
    int groebner_degree = 12;
};

// N D = N d/dx + N y' d/dy + M d/dy'.
VectorField soode_field(const SOODE& ode);

// The compatibility residuals; all vanish exactly for an accepted pair.
RatFun residual_S(const RatFun& S, const RatFun& phi);  // D[S] + phi_y - S phi_y' - S^2
RatFun residual_R(const RatFun& S, const RatFun& R, const RatFun& phi);  // D[R] + R (S + phi_y')
RatFun residual_SR(const RatFun& S, const RatFun& R);  // R_y - R_y' S - S_y' R
RatFun residual_DRS(const SRPair& pair);               // D[R S] + R phi_y

bool check_DRS(const SRPair& pair);
bool verify_pair(const SRPair& pair);  // all three residuals zero and R != 0

// Solutions of the S condition with numerator and denominator of ansatz
// degree <= deg. Every gauge branch is explored; results are distinct and verified.
std::vector<RatFun> find_S(const SOODE& ode, int deg, const SoodeLimits& limits, const Deadline& deadline = {});

// Integrating factors R for a verified S: first from products of powers of
// eigenpolynomials of S_d N^2 D (factors of S_d N, plus Darboux polynomials of
// N D up to degree `darboux_degree`), then from a direct R_n / R_d ansatz of degree
// <= deg. Each candidate must satisfy both R conditions. Scaled so that the
// trailing coefficient of R's numerator is 1.
std::vector<RatFun> find_R(const SOODE& ode, const RatFun& S, int deg, const SoodeLimits& limits,
                           const Deadline& deadline = {}, int darboux_degree = 0);

// The two strategies separately. The Darboux route uses the irreducible-ish
// factors of S_d N plus `extra` candidates.
std::optional<RatFun> find_R_darboux(const SOODE& ode, const RatFun& S, const std::vector<Poly>& extra = {});
std::vector<RatFun> find_R_direct(const SOODE& ode, const RatFun& S, int deg, const SoodeLimits& limits,
                                  const Deadline& deadline = {});

// Eigenpolynomials of N D up to the given degree, split into squarefree factors.
std::vector<Poly> soode_darboux_candidates(const SOODE& ode, int degree, const SolveLimits& limits);

struct SearchReport {
    std::vector<SRPair> pairs;  // ranked: fewest monomials first
    int degree = 0;             // level that produced the pairs
    std::vector<std::string> warnings;  // limits hit, irrational branches
};

// Iterative deepening over deg = 1 .. max_degree. At each level all S are
// found first, then R is sought for every S by the factor route, then with
// Darboux polynomials of N D, then by the direct ansatz, stopping at the first
// strategy that yields a pair. Throws NothingFound when no pair verifies up to
// the ceiling; `warnings` (if given) still receives the diagnostics then.
SearchReport search(const SOODE& ode, const SoodeLimits& limits, std::vector<std::string>* warnings = nullptr);

// Sorts by total monomial count of S_n, S_d, R_n, R_d, ties by canonical order.
void rank_pairs(std::vector<SRPair>& pairs);

// Integrating factor scaled to a trailing numerator coefficient of 1.
RatFun normalize_R(const RatFun& R);

}  // namespace ps2
