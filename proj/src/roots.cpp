#include "ps2/roots.hpp"

#include <algorithm>
#include <cmath>

namespace ps2 {

namespace {

std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<std::pair<Integer, int>> primes;
    for (unsigned long p = 2; p <= 1000000UL && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) primes.emplace_back(Integer(p), e);
    }
    if (n > 1) primes.emplace_back(n, 1);
    std::vector<Integer> out = {Integer(1)};
    for (const auto& [p, e] : primes) {
        const std::size_t n0 = out.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < n0; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

Rational horner(const std::vector<Rational>& c, const Rational& t) {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

bool plausible_root(const std::vector<double>& c, double t) {
    long double acc = 0, scale = 0, tp = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += c[i] * tp;
        scale += std::fabs(c[i]) * std::fabs(static_cast<double>(tp));
        tp *= t;
    }
    if (!std::isfinite(static_cast<double>(scale))) return true;  // let the exact test decide
    return std::fabs(static_cast<double>(acc)) <= 1e-6 * static_cast<double>(scale) + 1e-300;
}

}  // namespace

std::vector<Rational> deflate(std::vector<Rational> c, const std::vector<Rational>& roots) {
    for (const auto& r : roots) {
        // Synthetic division by (t - r).
        const std::size_t n = c.size();
        if (n < 2) break;
        std::vector<Rational> q(n - 1);
        Rational carry = 0;
        for (std::size_t i = n; i-- > 1;) {
            carry = c[i] + carry * r;
            q[i - 1] = carry;
        }
        c = std::move(q);
    }
    return c;
}

std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
    std::vector<Rational> c = coeffs;
    while (!c.empty() && is_zero(c.back())) c.pop_back();
    std::vector<Rational> roots;
    if (c.size() < 2) return roots;
    std::size_t low = 0;
    while (is_zero(c[low])) ++low;
    if (low > 0) {
        roots.push_back(0);
        c.erase(c.begin(), c.begin() + static_cast<long>(low));
    }
    if (c.size() >= 2) {
        Integer den_lcm = 1;
        for (const auto& q : c) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
        std::vector<Integer> ic;
        for (const auto& q : c) ic.push_back(Integer(q * den_lcm));
        std::vector<double> dc;
        for (const auto& q : c) dc.push_back(q.get_d());

        // Cauchy bound on root magnitudes.
        Rational bound = 0;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, Rational(abs(c[i] / c.back())));
        bound += 1;

        const auto ps = divisors(ic.front());
        const auto qs = divisors(ic.back());
        for (const auto& q : qs)
            for (const auto& p : ps) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
                if (g != 1) continue;
                for (int s : {1, -1}) {
                    Rational r(s * p, q);
                    r.canonicalize();
                    if (abs(r) > bound) continue;
                    if (!plausible_root(dc, r.get_d())) continue;
                    if (is_zero(horner(c, r))) roots.push_back(r);
                }
            }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace ps2
