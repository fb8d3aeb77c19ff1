#pragma once

// Certified escape regions W_R with explicit dominance constants, and orbit
// classification relative to A_p, W_R and A_f.

#include <cmath>
#include <limits>

#include "skewgreen/algebra.hpp"
#include "skewgreen/logspace.hpp"
#include "skewgreen/weights.hpp"

namespace skewgreen {

struct BaseEscape {
    double R_p = 2;
    double eps_p = 0;
};

/// eps(R) = |a_delta - 1| + sum_{i<delta} |a_i| R^{i-delta}.
inline double base_tail(const Poly1<Complex>& p, double R) {
    const int delta = p.degree();
    double eps = std::abs(p.leading() - Complex(1.0));
    for (const auto& [e, c] : p.terms())
        if (e < delta) eps += std::abs(c) * std::pow(R, e - delta);
    return eps;
}

/// Smallest R_p = 2^k >= 2 with eps_p <= 1/2. For |z| > R_p,
/// |p(z)/z^delta - 1| <= eps_p and |p(z)| > |z|.
inline BaseEscape base_escape_radius(const Poly1<Complex>& p) {
    if (p.degree() < 2) throw DomainError("delta >= 2 and d >= 2 required");
    double R = 2;
    while (base_tail(p, R) > 0.5) {
        R *= 2;
        if (R > 1e300) throw DomainError("leading coefficient of p is not 1");
    }
    return {R, base_tail(p, R)};
}

enum class RegionKind { GammaNonzero, Nondegenerate, FiberFree };

inline const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::GammaNonzero: return "GammaNonzero";
        case RegionKind::Nondegenerate: return "Nondegenerate";
        case RegionKind::FiberFree: return "FiberFree";
    }
    return "?";
}

/// W_R with r1 < |ratio| < r2 on it and f(W_R) inside W_R. The ratio is
/// |q/p^alpha| / |w/z^alpha|^d for delta > d, |q/(z^gamma w^d)| otherwise.
struct EscapeRegion {
    double R = 0;
    double r1 = 1;
    double r2 = 1;
    RegionKind kind = RegionKind::GammaNonzero;
    ExtendedRational alpha_used;
    /// alpha as a long double; 0 when alpha = -inf.
    LReal alpha = 0;
    /// Non-dominant coefficient mass S(R).
    double S = 0;
    /// Base escape data; eps_p is evaluated at R.
    double R_p = 2;
    double eps_p = 0;
    int delta = 2;
    int d = 2;
    int gamma = 0;

    /// log r = max(-log r1, log r2).
    double log_r() const { return std::max(-std::log(r1), std::log(r2)); }
    /// Per-step bound |log|p(z)/z^delta|| <= log r0 for |z| > R.
    double log_r0() const { return -std::log1p(-eps_p); }
};

namespace detail {

inline double rpow(double R, const Rational& e) { return std::pow(R, to_double(e)); }

}  // namespace detail

template <class C>
EscapeRegion certified_region(const SkewProduct<C>& fc, const WeightSpec<C>& spec) {
    const FloatSkewProduct f = fc.to_floating();
    if (!spec.dominant_monomial_ok)
        throw DominanceUnavailable("z^gamma w^d is not of maximal weight (delta > d, alpha > gamma/(delta-d))");

    EscapeRegion reg;
    reg.alpha_used = spec.alpha;
    reg.delta = f.delta();
    reg.d = f.d();
    reg.gamma = f.gamma();
    const BaseEscape base = base_escape_radius(f.p());
    reg.R_p = base.R_p;

    const int d = f.d();
    const int gamma = f.gamma();
    const Mono dom{gamma, d};
    const double dom_defect = std::abs(f.q().coefficient(dom) - Complex(1.0));

    if (spec.alpha.is_neg_infinity()) {
        reg.kind = RegionKind::FiberFree;
    } else if (gamma == 0) {
        reg.kind = RegionKind::Nondegenerate;
        reg.alpha = static_cast<LReal>(to_double(spec.alpha.value()));
    } else {
        reg.kind = RegionKind::GammaNonzero;
        reg.alpha = static_cast<LReal>(to_double(spec.alpha.value()));
    }

    // Exponent of R bounding each non-dominant term on W_R.
    std::vector<std::pair<double, Rational>> mass;
    for (const auto& [m, c] : f.q().terms()) {
        if (m == dom) continue;
        Rational e;
        switch (reg.kind) {
            case RegionKind::FiberFree: e = Rational(m.z - gamma); break;
            case RegionKind::Nondegenerate: e = Rational(m.w - d); break;
            case RegionKind::GammaNonzero: {
                const Rational& a = spec.alpha.value();
                e = Rational(m.w - d) + (Rational(m.z) + a * m.w - (Rational(gamma) + a * d));
                break;
            }
        }
        if (e >= 0) throw DominanceUnavailable("non-dominant term does not decay on W_R");
        mass.emplace_back(std::abs(c), e);
    }
    double M = 0;
    for (const auto& [e, c] : f.p().terms()) M += std::abs(c);

    auto S_at = [&](double R) {
        double s = dom_defect;
        for (const auto& [c, e] : mass) s += c * detail::rpow(R, e);
        return s;
    };
    const double a = static_cast<double>(reg.alpha);
    auto invariant = [&](double R, double S, double eps) {
        switch (reg.kind) {
            case RegionKind::FiberFree: return true;
            case RegionKind::Nondegenerate: return (1 - S) * std::pow(R, d - 1) >= std::pow(M, a);
            case RegionKind::GammaNonzero: {
                const double E = a >= 0 ? std::pow(1 + eps, a) : std::pow(1 - eps, a);
                return (1 - S) * std::pow(R, d - 1) >= E;
            }
        }
        return false;
    };

    double R = base.R_p;
    for (;;) {
        const double eps = base_tail(f.p(), R);
        const double S = S_at(R);
        if (eps <= 0.5 && S <= 0.25 && invariant(R, S, eps)) break;
        R *= 2;
        if (R > 1e150) throw DominanceUnavailable("no admissible escape radius");
    }
    reg.R = R;
    reg.S = S_at(R);
    reg.eps_p = base_tail(f.p(), R);
    reg.r1 = 1 - reg.S;
    reg.r2 = 1 + reg.S;
    if (f.delta() > d && reg.kind == RegionKind::GammaNonzero) {
        reg.r1 *= std::pow(1 + reg.eps_p, -a);
        reg.r2 *= std::pow(1 - reg.eps_p, -a);
    }
    return reg;
}

template <class C>
EscapeRegion certified_region(const SkewProduct<C>& f) {
    return certified_region(f, weight_spec(f));
}

/// Membership from log-magnitudes; lw = -inf encodes w = 0.
inline bool in_region_log(const EscapeRegion& reg, LReal lz, LReal lw) {
    const LReal lR = std::log(static_cast<LReal>(reg.R));
    if (std::isinf(lw) && lw < 0) return false;
    switch (reg.kind) {
        case RegionKind::FiberFree: return lz > lR;
        case RegionKind::GammaNonzero: return lz > lR && lw > lR + reg.alpha * lz;
        case RegionKind::Nondegenerate: {
            const LReal zpart = reg.alpha == 0 ? LReal(0) : reg.alpha * lz;
            return lw > lR + zpart && lw > (reg.alpha + 1) * lR;
        }
    }
    return false;
}

inline bool in_region(const EscapeRegion& reg, const Complex& z, const Complex& w) {
    return in_region_log(reg, OrbitCoord(z).log_abs(), OrbitCoord(w).log_abs());
}

enum class OrbitStatus { EntersWR, BaseBounded, Undecided };
enum class BaseStatus { BaseEscapes, BaseBoundedSoFar };

inline const char* to_string(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::EntersWR: return "EntersWR";
        case OrbitStatus::BaseBounded: return "BaseBounded";
        case OrbitStatus::Undecided: return "Undecided";
    }
    return "?";
}

struct OrbitClass {
    OrbitStatus status = OrbitStatus::Undecided;
    /// Entry step for EntersWR, otherwise steps checked.
    int n = 0;
    BaseStatus base_status = BaseStatus::BaseBoundedSoFar;
    int base_escape_step = -1;
    /// w_n = 0 and q(z, 0) = 0, so the orbit stays on {w = 0}.
    bool zero_fiber = false;
    /// f^n(z, w) at the step where classification stopped.
    OrbitPoint point;
};

/// q(z, 0) is identically zero.
inline bool zero_fiber_invariant(const FloatSkewProduct& f) {
    return f.q().terms().begin()->first.w > 0;
}

/// Iterates until entry into W_R, n_max steps, or stop(n, point) returns true.
template <class Stop>
OrbitClass classify_orbit_until(const FloatSkewProduct& f, const EscapeRegion& reg, const Complex& z,
                                const Complex& w, int n_max, Stop&& stop) {
    const OrbitStepper stepper(f);
    const bool zero_invariant = zero_fiber_invariant(f);
    const LReal lRp = std::log(static_cast<LReal>(reg.R_p));
    OrbitClass out;
    OrbitPoint x{OrbitCoord(z), OrbitCoord(w)};
    for (int n = 0;; ++n) {
        const LReal lz = x.z.log_abs();
        if (out.base_escape_step < 0 && lz > lRp) {
            out.base_escape_step = n;
            out.base_status = BaseStatus::BaseEscapes;
        }
        out.point = x;
        out.n = n;
        if (in_region_log(reg, lz, x.w.log_abs())) {
            out.status = OrbitStatus::EntersWR;
            return out;
        }
        // On the invariant fiber w = 0 only the base orbit is still followed.
        if (zero_invariant && x.w.is_zero()) {
            out.zero_fiber = true;
            if (out.base_escape_step >= 0) break;
        }
        if (n >= n_max || exhausted(x) || stop(n, x)) break;
        x = stepper.step(x);
    }
    out.status = out.base_status == BaseStatus::BaseEscapes ? OrbitStatus::Undecided : OrbitStatus::BaseBounded;
    return out;
}

inline OrbitClass classify_orbit(const FloatSkewProduct& f, const EscapeRegion& reg, const Complex& z,
                                 const Complex& w, int n_max) {
    return classify_orbit_until(f, reg, z, w, n_max, [](int, const OrbitPoint&) { return false; });
}

}  // namespace skewgreen
