#include "ps2/elem_invariant.hpp"

#include <algorithm>
#include <cmath>

#include "ps2/poly_algebra.hpp"

namespace ps2 {

bool poly_less(const Poly& a, const Poly& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
        if (ta[i].mono != tb[i].mono) return ta[i].mono < tb[i].mono;
        if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff;
    }
    return ta.size() < tb.size();
}

RatFun ElemInvariant::derivative(Var v) const {
    RatFun d = z0.derivative(v);
    for (const auto& l : logs) d += RatFun(l.arg.derivative(v), l.arg) * RatFun(l.coeff);
    for (const auto& a : atans) {
        const Poly top = a.num.derivative(v) * a.den - a.num * a.den.derivative(v);
        d += RatFun(top, a.num * a.num + a.den * a.den) * RatFun(a.coeff);
    }
    return d;
}

double ElemInvariant::evaluate(const std::array<double, kNumVars>& point) const {
    double value = z0.evaluate(point);
    for (const auto& l : logs) value += to_double(l.coeff) * std::log(std::fabs(ps2::evaluate(l.arg, point)));
    for (const auto& a : atans)
        value += to_double(a.coeff) * std::atan(ps2::evaluate(a.num, point) / ps2::evaluate(a.den, point));
    return value;
}

ElemInvariant operator+(const ElemInvariant& a, const ElemInvariant& b) {
    ElemInvariant r = a;
    r.z0 += b.z0;
    r.logs.insert(r.logs.end(), b.logs.begin(), b.logs.end());
    r.atans.insert(r.atans.end(), b.atans.begin(), b.atans.end());
    return canonicalize(std::move(r));
}

ElemInvariant scale(const ElemInvariant& inv, const Rational& c) {
    if (is_zero(c)) return {};
    ElemInvariant r = inv;
    r.z0 *= RatFun(c);
    for (auto& l : r.logs) l.coeff *= c;
    for (auto& a : r.atans) a.coeff *= c;
    return r;
}

ElemInvariant operator-(const ElemInvariant& a) { return scale(a, Rational(-1)); }

ElemInvariant operator-(const ElemInvariant& a, const ElemInvariant& b) { return a + (-b); }

ElemInvariant canonicalize(ElemInvariant inv) {
    std::vector<LogTerm> logs;
    auto add_log = [&logs](const Poly& f, const Rational& c) {
        for (auto& l : logs)
            if (l.arg == f) {
                l.coeff += c;
                return;
            }
        logs.push_back({c, f});
    };
    for (const auto& l : inv.logs) {
        if (is_zero(l.coeff) || l.arg.is_constant()) continue;
        for (const auto& f : squarefree_decomposition(l.arg).second) add_log(f.factor, l.coeff * f.multiplicity);
    }
    std::erase_if(logs, [](const LogTerm& l) { return is_zero(l.coeff); });
    std::sort(logs.begin(), logs.end(), [](const LogTerm& a, const LogTerm& b) { return poly_less(b.arg, a.arg); });

    std::vector<AtanTerm> atans;
    for (const auto& a : inv.atans) {
        if (is_zero(a.coeff)) continue;
        const RatFun arg(a.num, a.den);
        if (arg.is_constant()) continue;
        Rational c = a.coeff;
        Poly num = arg.num();
        if (sgn(num.leading_coeff()) < 0) {
            num = -num;
            c = -c;
        }
        auto it = std::find_if(atans.begin(), atans.end(),
                               [&](const AtanTerm& t) { return t.num == num && t.den == arg.den(); });
        if (it != atans.end())
            it->coeff += c;
        else
            atans.push_back({c, num, arg.den()});
    }
    std::erase_if(atans, [](const AtanTerm& a) { return is_zero(a.coeff); });
    std::sort(atans.begin(), atans.end(), [](const AtanTerm& a, const AtanTerm& b) {
        if (a.den != b.den) return poly_less(b.den, a.den);
        return poly_less(b.num, a.num);
    });

    inv.logs = std::move(logs);
    inv.atans = std::move(atans);
    return inv;
}

ElemInvariant normalize_scale(const ElemInvariant& inv) {
    Rational lead;
    if (!inv.z0.is_zero())
        lead = inv.z0.num().leading_coeff();
    else if (!inv.logs.empty())
        lead = inv.logs.front().coeff;
    else if (!inv.atans.empty())
        lead = inv.atans.front().coeff;
    else
        return inv;
    return scale(inv, Rational(1) / lead);
}

}  // namespace ps2
