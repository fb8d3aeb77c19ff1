#pragma once

// The rational extension of f to P(r, s, 1), its indeterminacy on the line
// at infinity L_inf = {t = 0}, and algebraic stability.

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>

#include "skewgreen/algebra.hpp"
#include "skewgreen/weights.hpp"

namespace skewgreen {

struct Mono3 {
    int z = 0;
    int w = 0;
    int t = 0;
    friend auto operator<=>(const Mono3&, const Mono3&) = default;
};

/// Polynomial in (z, w, t); exponents of t may be negative before clearing.
template <class C>
class Poly3 {
public:
    using Traits = CoeffTraits<C>;

    void add_term(Mono3 m, const C& c) {
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
    }

    const std::map<Mono3, C>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    int min_t() const {
        int m = 0;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (first || k.t < m) m = k.t;
            first = false;
        }
        return m;
    }

    Poly3 shifted_t(int k) const {
        Poly3 out;
        for (const auto& [m, c] : terms_) out.add_term({m.z, m.w, m.t + k}, c);
        return out;
    }

    /// Restriction to t = 0.
    Poly2<C> at_t0() const {
        Poly2<C> out;
        for (const auto& [m, c] : terms_)
            if (m.t == 0) out.add_term({m.z, m.w}, c);
        return out;
    }

    Complex eval(const Complex& z, const Complex& w, const Complex& t) const {
        Complex acc(0.0);
        for (const auto& [m, c] : terms_)
            acc += Traits::to_complex(c) * std::pow(z, m.z) * std::pow(w, m.w) * std::pow(t, m.t);
        return acc;
    }

    /// All terms share weighted degree deg under weights (r, s, 1).
    bool weighted_homogeneous(int r, int s, long long deg) const {
        for (const auto& [m, c] : terms_)
            if (static_cast<long long>(r) * m.z + static_cast<long long>(s) * m.w + m.t != deg) return false;
        return true;
    }

    friend bool operator==(const Poly3& a, const Poly3& b) { return a.terms_ == b.terms_; }

private:
    std::map<Mono3, C> terms_;
};

template <class C>
struct WeightedExtension {
    int r = 1;
    int s = 1;
    /// Components of weighted degrees r D, s D and D.
    std::array<Poly3<C>, 3> F;
    /// k in the weighted rescaling (t^{rk}, t^{sk}, t^k) that made F polynomial.
    int t_cleared = 0;
    /// j in the weighted factor (t^{rj}, t^{sj}, t^j) removed afterwards.
    int t_removed = 0;
    long long D = 0;
};

namespace detail {

inline int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace detail

/// [p(z/t^r) t^{lambda r} : q(z/t^r, w/t^s) t^{lambda s} : t^lambda], rescaled
/// by the weighted action of t until polynomial and then reduced.
template <class C>
WeightedExtension<C> extend(const SkewProduct<C>& f, int r, int s) {
    if (r < 1 || s < 1) throw DomainError("r, s >= 1 required");
    const int lambda = f.lambda();
    WeightedExtension<C> ext;
    ext.r = r;
    ext.s = s;
    for (const auto& [i, a] : f.p().terms()) ext.F[0].add_term({i, 0, lambda * r - r * i}, a);
    for (const auto& [m, c] : f.q().terms()) ext.F[1].add_term({m.z, m.w, lambda * s - r * m.z - s * m.w}, c);
    ext.F[2].add_term({0, 0, lambda}, CoeffTraits<C>::one());

    const std::array<int, 3> wt{r, s, 1};
    int k = 0;
    for (int i = 0; i < 3; ++i) k = std::max(k, detail::ceil_div(-ext.F[i].min_t(), wt[i]));
    for (int i = 0; i < 3; ++i) ext.F[i] = ext.F[i].shifted_t(wt[i] * k);
    ext.t_cleared = k;

    int j = ext.F[2].min_t();
    for (int i = 0; i < 2; ++i) j = std::min(j, ext.F[i].min_t() / wt[i]);
    for (int i = 0; i < 3; ++i) ext.F[i] = ext.F[i].shifted_t(-wt[i] * j);
    ext.t_removed = j;
    ext.D = lambda + k - j;
    return ext;
}

template <class C>
bool weighted_homogeneous(const WeightedExtension<C>& e) {
    return e.F[0].weighted_homogeneous(e.r, e.s, e.r * e.D) && e.F[1].weighted_homogeneous(e.r, e.s, e.s * e.D) &&
           e.F[2].weighted_homogeneous(e.r, e.s, e.D);
}

namespace detail {

/// Value at [0:1:0] (pure w terms) or [1:0:0] (pure z terms) with t = 0.
template <class C>
bool vanishes_at(const Poly3<C>& P, bool p_infty) {
    for (const auto& [m, c] : P.terms()) {
        if (m.t != 0) continue;
        if (p_infty ? m.z == 0 : m.w == 0) return false;
    }
    return true;
}

/// Terms of lowest t-degree, with t dropped.
template <class C>
Poly2<C> lowest_t_part(const Poly3<C>& P) {
    Poly2<C> out;
    const int m = P.min_t();
    for (const auto& [k, c] : P.terms())
        if (k.t == m) out.add_term({k.z, k.w}, c);
    return out;
}

}  // namespace detail

template <class C>
struct Indeterminacy {
    bool p_infty = false;
    bool one_zero_zero = false;
    /// F_1, F_2 restricted to t = 0; I on L_inf is their common zero set.
    Poly2<C> F1_t0;
    Poly2<C> F2_t0;
    bool F3_vanishes = true;

    std::string str() const {
        std::string s;
        if (F1_t0.is_zero() && !F2_t0.is_zero()) s = "I on L_inf = {F2(z,w,0) = 0}";
        else if (!F1_t0.is_zero() && F2_t0.is_zero()) s = "I on L_inf = {F1(z,w,0) = 0}";
        else s = "I on L_inf = {F1(z,w,0) = F2(z,w,0) = 0}";
        s += "; p_inf=[0:1:0] ";
        s += p_infty ? "indeterminate" : "regular";
        s += "; [1:0:0] ";
        s += one_zero_zero ? "indeterminate" : "regular";
        return s;
    }
};

template <class C>
Indeterminacy<C> indeterminacy_on_linf(const WeightedExtension<C>& e) {
    Indeterminacy<C> out;
    const bool f3 = e.D > 0;
    out.F3_vanishes = f3;
    out.p_infty = f3 && detail::vanishes_at(e.F[0], true) && detail::vanishes_at(e.F[1], true);
    out.one_zero_zero = f3 && detail::vanishes_at(e.F[0], false) && detail::vanishes_at(e.F[1], false);
    out.F1_t0 = e.F[0].at_t0();
    out.F2_t0 = e.F[1].at_t0();
    return out;
}

enum class LinfBehavior { InducedByH, ContractsToPoint, ContractsToIndeterminacy };

inline const char* to_string(LinfBehavior b) {
    switch (b) {
        case LinfBehavior::InducedByH: return "InducedByH";
        case LinfBehavior::ContractsToPoint: return "ContractsToPoint";
        case LinfBehavior::ContractsToIndeterminacy: return "ContractsToIndeterminacy";
    }
    return "?";
}

template <class C>
struct StabilityVerdict {
    bool algebraically_stable = false;
    CaseTag reason;
    bool p_infty_in_I = false;
    bool one_zero_zero_in_I = false;
    LinfBehavior linf_behavior = LinfBehavior::InducedByH;
    /// h(1, c) for InducedByH.
    Poly1<C> h;
    /// "[0:1:0]" or "[1:0:0]" for the contracting behaviors.
    std::string target;
    /// The symbolic witness agrees with the classification.
    bool witness_consistent = true;
    /// t_cleared == 0, meaning the lift is already polynomial.
    bool polynomial_lift = false;
};

template <class C>
StabilityVerdict<C> is_algebraically_stable(const SkewProduct<C>& f, const WeightSpec<C>& spec, int r, int s) {
    const WeightedExtension<C> ext = extend(f, r, s);
    const Indeterminacy<C> ind = indeterminacy_on_linf(ext);
    StabilityVerdict<C> v;
    v.reason = spec.tag;
    v.p_infty_in_I = ind.p_infty;
    v.one_zero_zero_in_I = ind.one_zero_zero;
    v.polynomial_lift = ext.t_cleared == 0;

    const Rational ratio(s, r);
    if (f.gamma() == 0 || f.delta() > f.d()) {
        v.algebraically_stable = spec.alpha.is_finite() && ratio >= spec.alpha.value();
    } else {
        v.algebraically_stable = false;
    }

    // [z : w : e] maps to [e^{o1} A : e^{o2} B : e^{o3}]; rescaling by the
    // weighted action keeps the components minimizing o1/r, o2/s, o3.
    const Rational v1 = ext.F[0].is_zero() ? Rational(ext.D + 1) : Rational(ext.F[0].min_t(), r);
    const Rational v2 = ext.F[1].is_zero() ? Rational(ext.D + 1) : Rational(ext.F[1].min_t(), s);
    const Rational v3(ext.F[2].min_t());
    const Rational lo = std::min({v1, v2, v3});
    if (v1 == lo && v2 == lo) {
        v.linf_behavior = LinfBehavior::InducedByH;
        v.h = h_restricted(detail::lowest_t_part(ext.F[1]));
    } else if (v2 == lo && v1 > lo) {
        v.target = "[0:1:0]";
        v.linf_behavior = ind.p_infty ? LinfBehavior::ContractsToIndeterminacy : LinfBehavior::ContractsToPoint;
    } else if (v1 == lo && v2 > lo) {
        v.target = "[1:0:0]";
        v.linf_behavior =
            ind.one_zero_zero ? LinfBehavior::ContractsToIndeterminacy : LinfBehavior::ContractsToPoint;
    } else {
        v.target = "[0:0:1]";
        v.linf_behavior = LinfBehavior::ContractsToPoint;
    }

    if (!v.algebraically_stable) {
        v.witness_consistent = v.linf_behavior == LinfBehavior::ContractsToIndeterminacy;
    } else if (v.linf_behavior == LinfBehavior::InducedByH) {
        v.witness_consistent = v.h.degree() >= 1;
    } else {
        v.witness_consistent = v.linf_behavior == LinfBehavior::ContractsToPoint;
    }
    return v;
}

template <class C>
struct LinfDynamics {
    /// h(1, c).
    Poly1<C> h;
    /// Denominator of s/r in lowest terms.
    int r = 1;
    int l = 0;
    /// h(c) = c^l H(c^r).
    Poly1<C> H;
    /// c^l H(c)^r, conjugate to the restriction to L_inf.
    Poly1<C> model;
};

template <class C>
LinfDynamics<C> linf_dynamics(const SkewProduct<C>& f, const WeightSpec<C>& spec, int r, int s) {
    const Rational ratio(s, r);
    const bool dgt = f.delta() > f.d() && spec.alpha.is_finite() && ratio == spec.alpha.value();
    const bool deq = f.delta() == f.d() && f.gamma() == 0 && spec.alpha.is_finite() && ratio >= spec.alpha.value();
    if (!dgt && !deq) throw WrongCase("L_inf dynamics need delta > d with s/r = alpha, or delta = d, gamma = 0, s/r >= alpha");

    const WeightedExtension<C> ext = extend(f, r, s);
    LinfDynamics<C> out;
    out.h = h_restricted(ext.F[1].at_t0());
    const int den = static_cast<int>(denominator(ratio).convert_to<long>());
    out.r = den;
    if (out.h.is_zero()) throw DecompositionFailure("h(1, c) vanishes");
    out.l = out.h.min_degree() % den;
    for (const auto& [e, c] : out.h.terms()) {
        if ((e - out.l) % den != 0) throw DecompositionFailure("exponents of h(1, c) are not congruent modulo r");
        out.H.add_term((e - out.l) / den, c);
    }
    Poly1<C> model = Poly1<C>::monomial(out.l);
    for (int i = 0; i < den; ++i) model = model.multiply(out.H);
    out.model = model;
    return out;
}

}  // namespace skewgreen
