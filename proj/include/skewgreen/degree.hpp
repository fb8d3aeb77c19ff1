#pragma once

// deg(f^n) by exact composition, and the closed-form growth bounds in alpha.

#include <optional>
#include <vector>

#include "skewgreen/algebra.hpp"
#include "skewgreen/weights.hpp"

namespace skewgreen {

template <class C>
long long total_degree(const SkewProduct<C>& f) {
    return std::max<long long>(f.p().degree(), f.q().total_degree());
}

/// deg(f^n) for n = 1..n_max; entries past the term budget are nullopt.
template <class C>
std::vector<std::optional<long long>> deg_sequence(const SkewProduct<C>& f, int n_max, const ComposeOptions& opts = {}) {
    std::vector<std::optional<long long>> out;
    std::optional<SkewProduct<C>> acc;
    for (int n = 1; n <= n_max; ++n) {
        try {
            acc = n == 1 ? f : compose_skew(f, *acc, opts);
            out.push_back(total_degree(*acc));
        } catch (const TermBudgetExceeded&) {
            out.resize(n_max);
            break;
        }
    }
    return out;
}

template <class C>
std::optional<long long> deg_fn(const SkewProduct<C>& f, int n, const ComposeOptions& opts = {}) {
    if (n < 1) throw DomainError("n >= 1 required");
    return deg_sequence(f, n, opts).back();
}

struct DegreeBounds {
    Rational lower;
    Rational upper;
    bool equality = false;
};

/// Case bounds on deg(f^n). Equality branches: alpha <= 0 (or -inf) for
/// delta <= d with gamma != 0, and max{alpha, 1} = 1 otherwise.
template <class C>
DegreeBounds deg_bounds(const SkewProduct<C>& f, const ExtendedRational& a, int n) {
    using detail::ipow;
    const int delta = f.delta();
    const int d = f.d();
    const int gamma = f.gamma();
    DegreeBounds b;

    if (gamma == 0 || delta > d) {
        const Rational ln = ipow(Rational(f.lambda()), n);
        const Rational& al = a.value();
        b.lower = ln;
        b.upper = (al > 1 ? al : Rational(1)) * ln;
    } else if (delta < d) {
        const Rational dn = ipow(Rational(d), n);
        const Rational frac = Rational(gamma, d - delta) * (1 - ipow(Rational(delta, d), n));
        b.lower = (1 + frac) * dn;
        const Rational& al = a.value();
        if (al <= 0) {
            b.upper = b.lower;
        } else {
            const Rational inv = 1 / al;
            b.upper = ((al > 1 ? al : Rational(1)) + (inv > 1 ? inv : Rational(1)) * frac) * dn;
        }
    } else {
        const Rational dn = ipow(Rational(d), n);
        const Rational lin = Rational(gamma, d) * n;
        b.lower = (lin + 1) * dn;
        if (!a.is_finite() || a.value() <= 0) {
            b.upper = b.lower;
        } else {
            const Rational& al = a.value();
            const Rational inv = 1 / al;
            b.upper = ((inv > 1 ? inv : Rational(1)) * lin + (al > 1 ? al : Rational(1))) * dn;
        }
    }
    b.equality = b.lower == b.upper;
    return b;
}

struct DegreeReport {
    int n = 0;
    std::optional<long long> exact;
    Rational lower;
    Rational upper;
    bool equality = false;
    /// lower <= exact <= upper; true when exact is unavailable.
    bool within_bounds = true;
};

struct DegreeGrowth {
    std::vector<DegreeReport> reports;
    std::vector<WeightGrowthReport> weights;
    bool ok() const {
        for (const auto& r : reports)
            if (!r.within_bounds) return false;
        for (const auto& w : weights)
            if (w.applicable && !w.match) return false;
        return true;
    }
};

template <class C>
DegreeGrowth check_degree_growth(const SkewProduct<C>& f, const ExtendedRational& a, int n_max,
                                 const ComposeOptions& opts = {}, int weight_n_max = 3) {
    DegreeGrowth out;
    const auto exact = deg_sequence(f, n_max, opts);
    for (int n = 1; n <= n_max; ++n) {
        DegreeReport r;
        r.n = n;
        r.exact = exact[n - 1];
        const DegreeBounds b = deg_bounds(f, a, n);
        r.lower = b.lower;
        r.upper = b.upper;
        r.equality = b.equality;
        if (r.exact) r.within_bounds = b.lower <= Rational(*r.exact) && Rational(*r.exact) <= b.upper;
        out.reports.push_back(std::move(r));
    }
    const bool weighted = a.is_finite() && (a.value() > 0 || f.gamma() == 0);
    if (weighted) {
        for (int n = 1; n <= std::min(n_max, weight_n_max); ++n) {
            try {
                out.weights.push_back(check_weight_growth(f, n, opts));
            } catch (const TermBudgetExceeded&) {
                break;
            }
        }
    }
    return out;
}

}  // namespace skewgreen
