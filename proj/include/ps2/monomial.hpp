#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "ps2/errors.hpp"

namespace ps2 {

// Variables of the base ring. y' is written `yp` in code; `t` is an auxiliary
// parameter used by resultants and the log-part of rational integration.
enum class Var : int { x = 0, y = 1, yp = 2, t = 3 };

inline constexpr int kNumVars = 4;
inline constexpr std::array<Var, 3> kOdeVars = {Var::x, Var::y, Var::yp};

inline constexpr int index(Var v) { return static_cast<int>(v); }

// Exponent vector packed as [deg:16][x:12][y:12][yp:12][t:12]. Comparing the
// packed keys yields the canonical order: total degree first, ties broken
// lexicographically with x > y > y' > t.
class Monomial {
  public:
    static constexpr int kMaxExponent = (1 << 12) - 1;

    constexpr Monomial() = default;

    static Monomial from_exponents(int ex, int ey, int eyp = 0, int et = 0) {
        const std::array<int, kNumVars> e = {ex, ey, eyp, et};
        std::uint64_t key = 0;
        int deg = 0;
        for (int i = 0; i < kNumVars; ++i) {
            if (e[i] < 0 || e[i] > kMaxExponent) throw LimitExceeded("monomial exponent out of range");
            key |= static_cast<std::uint64_t>(e[i]) << shift(i);
            deg += e[i];
        }
        key |= static_cast<std::uint64_t>(deg) << 48;
        return Monomial(key);
    }

    static Monomial of(Var v, int e = 1) {
        std::array<int, kNumVars> ex{};
        ex[index(v)] = e;
        return from_exponents(ex[0], ex[1], ex[2], ex[3]);
    }

    constexpr int exponent(Var v) const { return exponent(index(v)); }
    constexpr int exponent(int i) const { return static_cast<int>((key_ >> shift(i)) & kMaxExponent); }
    constexpr int degree() const { return static_cast<int>(key_ >> 48); }
    constexpr bool is_one() const { return key_ == 0; }
    constexpr std::uint64_t key() const { return key_; }

    Monomial operator*(Monomial o) const {
        for (int i = 0; i < kNumVars; ++i)
            if (exponent(i) + o.exponent(i) > kMaxExponent) throw LimitExceeded("monomial exponent overflow");
        return Monomial(key_ + o.key_);
    }

    constexpr bool divides(Monomial o) const {
        for (int i = 0; i < kNumVars; ++i)
            if (exponent(i) > o.exponent(i)) return false;
        return true;
    }

    // Requires divides(o) on the reversed operands: (*this) / o.
    constexpr Monomial operator/(Monomial o) const { return Monomial(key_ - o.key_); }

    // Same monomial with the exponent of `v` replaced.
    Monomial with_exponent(Var v, int e) const {
        std::array<int, kNumVars> ex{};
        for (int i = 0; i < kNumVars; ++i) ex[i] = exponent(i);
        ex[index(v)] = e;
        return from_exponents(ex[0], ex[1], ex[2], ex[3]);
    }

    static Monomial gcd(Monomial a, Monomial b) {
        std::array<int, kNumVars> ex{};
        for (int i = 0; i < kNumVars; ++i) ex[i] = a.exponent(i) < b.exponent(i) ? a.exponent(i) : b.exponent(i);
        return from_exponents(ex[0], ex[1], ex[2], ex[3]);
    }

    constexpr auto operator<=>(const Monomial&) const = default;

  private:
    constexpr explicit Monomial(std::uint64_t key) : key_(key) {}
    static constexpr int shift(int i) { return 36 - 12 * i; }

    std::uint64_t key_ = 0;
};

}  // namespace ps2
