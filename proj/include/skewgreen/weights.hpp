#pragma once

// The weight alpha of a skew product, its weighted-homogeneous top part h,
// and the weight growth of the fiber iterates Q_z^n.

#include <optional>
#include <string>

#include "skewgreen/algebra.hpp"
#include "skewgreen/rational.hpp"

namespace skewgreen {

enum class DegreeCase { DeltaGt, DeltaLt, DeltaEq };

struct CaseTag {
    DegreeCase degree = DegreeCase::DeltaGt;
    bool gamma_zero = true;

    /// e.g. "delta=d, gamma!=0".
    std::string str() const {
        std::string s = degree == DegreeCase::DeltaGt ? "delta>d" : degree == DegreeCase::DeltaLt ? "delta<d" : "delta=d";
        return s + (gamma_zero ? ", gamma=0" : ", gamma!=0");
    }
    friend bool operator==(const CaseTag&, const CaseTag&) = default;
};

template <class C>
CaseTag case_tag(const SkewProduct<C>& f) {
    CaseTag tag;
    tag.degree = f.delta() > f.d() ? DegreeCase::DeltaGt : f.delta() < f.d() ? DegreeCase::DeltaLt : DegreeCase::DeltaEq;
    tag.gamma_zero = f.gamma() == 0;
    return tag;
}

/// The weight alpha. Only exponents of q enter, so coefficients need not be
/// normalized for this computation.
///
/// gamma = 0 uses the nondegenerate definition (alpha = 0 when deg_z q = 0),
/// so q = w^d gets 0 rather than -inf.
template <class C>
ExtendedRational alpha(const SkewProduct<C>& f) {
    const int delta = f.delta();
    const int d = f.d();
    const int gamma = f.gamma();
    std::optional<Rational> best;
    auto consider = [&](Rational v) {
        if (!best || v > *best) best = std::move(v);
    };

    if (gamma == 0 || delta > d) {
        if (f.q().deg_z() <= 0) return Rational(0);
        const int lambda = f.lambda();
        for (const auto& [m, c] : f.q().terms())
            if (m.w < lambda) consider(Rational(m.z, lambda - m.w));
        return best ? *best : Rational(0);
    }

    if (delta < d) consider(Rational(-gamma, d - delta));
    for (const auto& [m, c] : f.q().terms())
        if (m.w < d) consider(Rational(m.z - gamma, d - m.w));
    if (!best) return ExtendedRational::neg_infinity();  // q = b(z) w^d with delta = d
    return *best;
}

/// max over stored terms of n + alpha m.
template <class C>
Rational weight_of_poly(const Poly2<C>& q, const ExtendedRational& a) {
    const Rational& al = a.value();
    std::optional<Rational> best;
    for (const auto& [m, c] : q.terms()) {
        Rational wgt = Rational(m.z) + al * m.w;
        if (!best || wgt > *best) best = std::move(wgt);
    }
    if (!best) throw DomainError("weight of the zero polynomial");
    return *best;
}

/// Terms of q attaining the maximal weight n + alpha m.
template <class C>
Poly2<C> weighted_top_part(const Poly2<C>& q, const ExtendedRational& a) {
    const Rational top = weight_of_poly(q, a);
    const Rational& al = a.value();
    Poly2<C> h;
    for (const auto& [m, c] : q.terms())
        if (Rational(m.z) + al * m.w == top) h.add_term(m, c);
    return h;
}

/// c -> h(1, c).
template <class C>
Poly1<C> h_restricted(const Poly2<C>& h) {
    Poly1<C> out;
    for (const auto& [m, c] : h.terms()) out.add_term(m.w, c);
    return out;
}

template <class C>
struct WeightSpec {
    ExtendedRational alpha;
    CaseTag tag;
    /// Weighted-homogeneous top part of q; for alpha = -inf the monomial z^gamma w^d.
    Poly2<C> h;
    /// z^gamma w^d has maximal weight: delta <= d, or delta > d with alpha = gamma/(delta - d).
    bool dominant_monomial_ok = false;

    /// gamma / (delta - d) when delta != d.
    std::optional<Rational> monomial_alpha;
};

template <class C>
WeightSpec<C> weight_spec(const SkewProduct<C>& f) {
    WeightSpec<C> spec;
    spec.alpha = alpha(f);
    spec.tag = case_tag(f);
    if (f.delta() != f.d()) spec.monomial_alpha = Rational(f.gamma()) / (f.delta() - f.d());
    if (spec.alpha.is_finite()) {
        spec.h = weighted_top_part(f.q(), spec.alpha);
    } else {
        spec.h.add_term({f.gamma(), f.d()}, f.b().leading());
    }
    if (f.delta() <= f.d()) {
        spec.dominant_monomial_ok = true;
    } else {
        spec.dominant_monomial_ok = spec.alpha.value() == *spec.monomial_alpha;
    }
    return spec;
}

/// gamma_n = gamma (delta^{n-1} + delta^{n-2} d + ... + d^{n-1}).
inline Rational gamma_n(int delta, int d, int gamma, int n) {
    Rational sum = 0;
    for (int k = 0; k < n; ++k) sum += detail::ipow(Rational(delta), n - 1 - k) * detail::ipow(Rational(d), k);
    return sum * gamma;
}

struct WeightGrowthReport {
    int n = 0;
    bool applicable = true;
    Rational actual = 0;
    Rational predicted = 0;
    bool match = false;
};

/// Predicted weight of Q_z^n for the case of f.
template <class C>
Rational predicted_weight(const SkewProduct<C>& f, const ExtendedRational& a, int n) {
    const Rational& al = a.value();
    const int delta = f.delta();
    const int d = f.d();
    if (f.gamma() == 0) return al * detail::ipow(Rational(f.lambda()), n);
    if (delta > d) return al * detail::ipow(Rational(delta), n);
    if (delta < d) return gamma_n(delta, d, f.gamma(), n) + al * detail::ipow(Rational(d), n);
    return Rational(n) * f.gamma() * detail::ipow(Rational(d), n - 1) + al * detail::ipow(Rational(d), n);
}

/// Composes f symbolically n times and compares the weight of Q_z^n with the
/// case prediction.
template <class C>
WeightGrowthReport check_weight_growth(const SkewProduct<C>& f, int n, const ComposeOptions& opts = {}) {
    WeightGrowthReport rep;
    rep.n = n;
    const ExtendedRational a = alpha(f);
    if (!a.is_finite()) {
        rep.applicable = false;
        return rep;
    }
    const SkewProduct<C> fn = iterate_skew(f, n, opts);
    rep.actual = weight_of_poly(fn.q(), a);
    rep.predicted = predicted_weight(f, a, n);
    rep.match = rep.actual == rep.predicted;
    return rep;
}

}  // namespace skewgreen
