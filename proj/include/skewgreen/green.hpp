#pragma once

// Green functions of polynomial skew products with rigorous tail bounds.
//
// Every map passed here is expected to be normalized (monic p and b).
// Certified values come from telescoping estimators started inside W_R and
// transported back along the orbit; their error_bound covers the tail of the
// estimator plus a floating slack of 1e-12 N^2 for N transport steps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "skewgreen/degree.hpp"
#include "skewgreen/escape.hpp"
#include "skewgreen/logspace.hpp"
#include "skewgreen/weights.hpp"

namespace skewgreen {

enum class ValueKind { Finite, PosInf, NegInf };
enum class GreenStatus { Certified, BestEffort, Undecided };

inline const char* to_string(GreenStatus s) {
    switch (s) {
        case GreenStatus::Certified: return "Certified";
        case GreenStatus::BestEffort: return "BestEffort";
        case GreenStatus::Undecided: return "Undecided";
    }
    return "?";
}

/// Weaker of two statuses: Certified > BestEffort > Undecided.
inline GreenStatus weaker(GreenStatus a, GreenStatus b) {
    return static_cast<int>(a) > static_cast<int>(b) ? a : b;
}

struct GreenValue {
    ValueKind kind = ValueKind::Finite;
    double value = 0;
    /// Meaningless for infinite values.
    double error_bound = 0;
    int iterations = 0;
    GreenStatus status = GreenStatus::Certified;

    static GreenValue finite(double v, double err, int it, GreenStatus s) {
        return {ValueKind::Finite, v, err, it, s};
    }
    static GreenValue pos_inf(int it, GreenStatus s) { return {ValueKind::PosInf, 0, 0, it, s}; }
    static GreenValue neg_inf(int it, GreenStatus s) { return {ValueKind::NegInf, 0, 0, it, s}; }

    bool is_finite() const noexcept { return kind == ValueKind::Finite; }
    double as_double() const noexcept {
        switch (kind) {
            case ValueKind::PosInf: return std::numeric_limits<double>::infinity();
            case ValueKind::NegInf: return -std::numeric_limits<double>::infinity();
            default: return value;
        }
    }

    /// "value = 1.79175946922805 ± 1e-12 [Certified]".
    std::string str() const {
        char buf[128];
        if (kind == ValueKind::Finite)
            std::snprintf(buf, sizeof buf, "value = %.15g ± %.3g [%s]", value, error_bound, to_string(status));
        else
            std::snprintf(buf, sizeof buf, "value = %s [%s]", kind == ValueKind::PosInf ? "+inf" : "-inf",
                          to_string(status));
        return buf;
    }
};

struct GreenOptions {
    double tol = 1e-9;
    int n_max = 10000;
};

namespace detail {

inline LReal pow_inv(int base, int k) { return std::pow(static_cast<LReal>(base), static_cast<LReal>(-k)); }

/// Floating slack added when a value is transported back through N steps.
inline double transport_slack(int N, double value) {
    return 1e-12 * static_cast<double>(N) * N + 1e-15 * (1 + std::fabs(value));
}

/// Steps a base-bounded orbit is followed before falling back to direct iteration.
inline constexpr int kBaseBoundedCutoff = 200;

}  // namespace detail

/// G_p(z) = lim delta^{-n} log^+|p^n(z)| for monic p.
inline GreenValue green_base(const Poly1<Complex>& p, const Complex& z, const GreenOptions& opts = {}) {
    const BaseEscape be = base_escape_radius(p);
    const int delta = p.degree();
    const LReal lRp = std::log(static_cast<LReal>(be.R_p));
    const LReal tail_unit = -std::log1p(-static_cast<LReal>(be.eps_p)) / (delta - 1);
    const BaseStepper stepper(p);
    OrbitCoord x(z);
    for (int n = 0;; ++n) {
        const LReal L = x.log_abs();
        const LReal scale = detail::pow_inv(delta, n);
        if (L > lRp) {
            const LReal err = scale * tail_unit;
            if (err <= opts.tol / 2 || n >= opts.n_max || std::fabs(L) > kLogOverflow / 2) {
                const double v = static_cast<double>(scale * L);
                return GreenValue::finite(v, static_cast<double>(err) + detail::transport_slack(0, v), n,
                                          GreenStatus::Certified);
            }
        } else {
            // Maximum principle on |z| <= R_p.
            const LReal bound = scale * (lRp + tail_unit);
            if (bound <= opts.tol || n >= opts.n_max)
                return GreenValue::finite(0.0, static_cast<double>(bound), n, GreenStatus::BestEffort);
        }
        x = stepper.step(x);
    }
}

enum class EstimatorKind {
    /// d^{-k} log|z_k^{-alpha} w_k|, delta > d.
    Ratio,
    /// d^{-k} log|w_k| + gamma/(d-delta) (delta/d)^k log|z_0|, delta < d or gamma = 0.
    Hat,
    /// d^{-k} log|z_k^{-k gamma/d} w_k|, delta = d with gamma != 0.
    Weighted,
};

/// A telescoping estimator started at a point of W_R, with the per-step
/// increment bound of its case.
struct Estimator {
    EstimatorKind kind = EstimatorKind::Hat;
    int delta = 2;
    int d = 2;
    int gamma = 0;
    LReal alpha = 0;
    double log_r = 0;
    double log_r0 = 0;
    LReal lz0 = 0;

    LReal value(int k, const OrbitPoint& x) const {
        const LReal s = detail::pow_inv(d, k);
        const LReal lz = x.z.log_abs();
        const LReal lw = x.w.log_abs();
        switch (kind) {
            case EstimatorKind::Ratio: return s * (lw - (alpha == 0 ? LReal(0) : alpha * lz));
            case EstimatorKind::Hat: return s * lw + hat_coefficient() * std::pow(LReal(delta) / d, k) * lz0;
            case EstimatorKind::Weighted: return s * (lw - LReal(k) * gamma / d * lz);
        }
        return 0;
    }

    /// Bound on |E_{k+1} - E_k|.
    LReal step_bound(int k) const {
        const LReal s1 = detail::pow_inv(d, k + 1);
        switch (kind) {
            case EstimatorKind::Ratio: return s1 * log_r;
            case EstimatorKind::Hat:
                return LReal(gamma) / d * std::pow(LReal(delta) / d, k) * log_r0 + s1 * log_r;
            case EstimatorKind::Weighted: return s1 * (log_r + LReal(k + 1) * gamma / d * log_r0);
        }
        return 0;
    }

    /// Sum of step_bound(k) over k >= K.
    LReal tail(int K) const {
        const LReal geo = detail::pow_inv(d, K) * log_r / (d - 1);
        switch (kind) {
            case EstimatorKind::Ratio: return geo;
            case EstimatorKind::Hat: return hat_coefficient() * std::pow(LReal(delta) / d, K) * log_r0 + geo;
            case EstimatorKind::Weighted: {
                // sum_{j>=m} j x^j = x^m (m - (m-1) x) / (1-x)^2 with m = K+1, x = 1/d.
                const LReal x = LReal(1) / d;
                const LReal m = K + 1;
                const LReal arith = detail::pow_inv(d, K + 1) * (m - (m - 1) * x) / ((1 - x) * (1 - x));
                return geo + LReal(gamma) / d * log_r0 * arith;
            }
        }
        return 0;
    }

    LReal hat_coefficient() const { return gamma == 0 ? LReal(0) : LReal(gamma) / (d - delta); }
};

inline EstimatorKind estimator_kind(const FloatSkewProduct& f, const EscapeRegion& reg) {
    if (reg.kind == RegionKind::FiberFree || (f.delta() == f.d() && f.gamma() != 0)) return EstimatorKind::Weighted;
    if (f.delta() > f.d()) return EstimatorKind::Ratio;
    return EstimatorKind::Hat;
}

inline Estimator make_estimator(const FloatSkewProduct& f, const EscapeRegion& reg, const OrbitPoint& start) {
    Estimator e;
    e.kind = estimator_kind(f, reg);
    e.delta = f.delta();
    e.d = f.d();
    e.gamma = f.gamma();
    e.alpha = reg.alpha;
    e.log_r = reg.log_r();
    e.log_r0 = reg.log_r0();
    e.lz0 = start.z.log_abs();
    return e;
}

struct EstimatorRun {
    LReal value = 0;
    LReal tail = 0;
    int steps = 0;
};

/// Advances the estimator from a W_R point until its tail is at most tol.
inline EstimatorRun run_estimator(const OrbitStepper& stepper, const Estimator& est, OrbitPoint x, LReal tol,
                                  int max_steps) {
    int k = 0;
    while (est.tail(k) > tol && k < max_steps) {
        OrbitPoint y = stepper.step(x);
        if (exhausted(y)) break;
        x = y;
        ++k;
    }
    return {est.value(k, x), est.tail(k), k};
}

struct TelescopeStep {
    int k = 0;
    double increment = 0;
    double bound = 0;
};

/// Increments |E_{k+1} - E_k| of the case estimator from a W_R point.
inline std::vector<TelescopeStep> telescoping_trace(const FloatSkewProduct& f, const EscapeRegion& reg,
                                                    const Complex& z, const Complex& w, int steps) {
    const OrbitStepper stepper(f);
    OrbitPoint x{OrbitCoord(z), OrbitCoord(w)};
    if (!in_region_log(reg, x.z.log_abs(), x.w.log_abs())) throw DomainError("start point is not in W_R");
    const Estimator est = make_estimator(f, reg, x);
    std::vector<TelescopeStep> out;
    LReal prev = est.value(0, x);
    for (int k = 0; k < steps; ++k) {
        OrbitPoint y = stepper.step(x);
        if (exhausted(y)) break;
        const LReal cur = est.value(k + 1, y);
        out.push_back({k, static_cast<double>(std::fabs(cur - prev)), static_cast<double>(est.step_bound(k))});
        prev = cur;
        x = y;
    }
    return out;
}

namespace detail {

/// Direct iteration of v_n = term(n, f^n(z, w)) with a ratio-based error
/// estimate |D| + |D| rho / (1 - rho), rho = |D_n / D_{n-1}| capped at 0.99.
template <class Term>
GreenValue direct_sequence(const FloatSkewProduct& f, OrbitPoint x, int n0, const GreenOptions& opts,
                           Term&& term, GreenStatus status = GreenStatus::BestEffort) {
    const OrbitStepper stepper(f);
    LReal v = term(0, x);
    LReal prev_delta = 0;
    double err = std::numeric_limits<double>::infinity();
    int quiet = 0;
    int n = 0;
    for (; n < opts.n_max; ++n) {
        OrbitPoint y = stepper.step(x);
        if (exhausted(y)) break;
        const LReal nv = term(n + 1, y);
        if (!std::isfinite(nv)) {
            if (std::isnan(nv)) break;
            return nv > 0 ? GreenValue::pos_inf(n0 + n + 1, status) : GreenValue::neg_inf(n0 + n + 1, status);
        }
        const LReal delta = nv - v;
        LReal rho = prev_delta != 0 ? std::fabs(delta / prev_delta) : LReal(0.5);
        rho = std::min<LReal>(rho, 0.99);
        err = static_cast<double>(std::fabs(delta) * (1 + rho / (1 - rho)));
        v = nv;
        x = y;
        prev_delta = delta;
        quiet = delta == 0 ? quiet + 1 : 0;
        if (n >= 8 && (err <= opts.tol || quiet >= 8)) {
            ++n;
            break;
        }
    }
    if (!std::isfinite(v)) return v > 0 ? GreenValue::pos_inf(n0 + n, status) : GreenValue::neg_inf(n0 + n, status);
    return GreenValue::finite(static_cast<double>(v), err, n0 + n, status);
}

inline LReal scaled_log_plus(int d, int n, LReal lw) { return pow_inv(d, n) * log_plus(lw); }

/// Walks to W_R, stopping early once bound(n, point) <= tol for base-escaped
/// points or Nondegenerate regions, or after a fixed cutoff otherwise.
template <class Bound>
OrbitClass walk(const FloatSkewProduct& f, const EscapeRegion& reg, const Complex& z, const Complex& w,
                const GreenOptions& opts, Bound&& bound) {
    const LReal lRp = std::log(static_cast<LReal>(reg.R_p));
    bool escaped = false;
    return classify_orbit_until(f, reg, z, w, opts.n_max, [&](int n, const OrbitPoint& x) {
        escaped = escaped || x.z.log_abs() > lRp;
        if (escaped || reg.kind == RegionKind::Nondegenerate) return bound(n, x) <= opts.tol;
        return n >= kBaseBoundedCutoff;
    });
}

inline bool fiber_zero_certified(const OrbitClass& oc) { return oc.zero_fiber; }

}  // namespace detail

/// Upper bound for a fiber Green function at an orbit point outside W_R,
/// from the maximum principle on the disc bounded by the edge of W_R.
/// Returns +inf when the point is outside the range where the bound holds.
inline LReal undecided_bound(const FloatSkewProduct& f, const EscapeRegion& reg, int n, const OrbitPoint& x) {
    const LReal lR = std::log(static_cast<LReal>(reg.R));
    const LReal lz = x.z.log_abs();
    const int d = f.d();
    const LReal scale = detail::pow_inv(d, n);
    const LReal cr = reg.log_r() / (d - 1);
    const LReal inf = std::numeric_limits<LReal>::infinity();
    if (reg.kind == RegionKind::Nondegenerate) {
        const LReal zpart = reg.alpha == 0 ? LReal(0) : reg.alpha * lz;
        return scale * (std::max(lR + zpart, (reg.alpha + 1) * lR) + cr);
    }
    if (lz <= lR || reg.kind == RegionKind::FiberFree) return inf;
    if (f.delta() > d) return scale * (lR + cr);
    const LReal c = LReal(f.gamma()) / (d - f.delta());
    return scale * (lR + (reg.alpha + c) * lz + c * reg.log_r0() + cr);
}

/// G_z^alpha = lim d^{-n} log^+|z_n^{-alpha} w_n| for delta > d, alpha = gamma/(delta - d).
template <class C>
GreenValue green_fiber_ratio(const SkewProduct<C>& fc, const std::optional<EscapeRegion>& region, const Complex& z,
                             const Complex& w, const GreenOptions& opts = {}) {
    const FloatSkewProduct f = fc.to_floating();
    const WeightSpec<Complex> spec = weight_spec(f);
    if (f.delta() <= f.d() || !spec.dominant_monomial_ok)
        throw WrongCase("G_z^alpha needs delta > d and alpha = gamma/(delta - d)");
    const EscapeRegion reg = region ? *region : certified_region(f, spec);
    const int d = f.d();
    const LReal a = reg.alpha;

    const OrbitClass oc = detail::walk(f, reg, z, w, opts, [&](int n, const OrbitPoint& x) {
        return undecided_bound(f, reg, n, x);
    });
    if (oc.zero_fiber) return GreenValue::finite(0, 0, oc.n, GreenStatus::Certified);
    if (oc.status == OrbitStatus::EntersWR) {
        const int N = oc.n;
        const Estimator est = make_estimator(f, reg, oc.point);
        const LReal scale = detail::pow_inv(d, N);
        const EstimatorRun run = run_estimator(OrbitStepper(f), est, oc.point, opts.tol / (2 * scale), opts.n_max);
        const double v = static_cast<double>(scale * run.value);
        return GreenValue::finite(v, static_cast<double>(scale * run.tail) + detail::transport_slack(N, v),
                                  N + run.steps, GreenStatus::Certified);
    }
    const LReal b = undecided_bound(f, reg, oc.n, oc.point);
    if (reg.kind == RegionKind::Nondegenerate && b <= opts.tol)
        return GreenValue::finite(0, static_cast<double>(b), oc.n, GreenStatus::Certified);
    if (oc.status == OrbitStatus::Undecided)
        return GreenValue::finite(0, static_cast<double>(b), oc.n, GreenStatus::Undecided);
    return detail::direct_sequence(f, oc.point, oc.n, opts, [&](int k, const OrbitPoint& x) {
        const LReal lw = x.w.log_abs();
        if (std::isinf(lw) && lw < 0) return LReal(0);
        return detail::scaled_log_plus(d, oc.n + k, lw - (a == 0 ? LReal(0) : a * x.z.log_abs()));
    });
}

/// G_z = lim d^{-n} log^+|Q_z^n(w)|.
template <class C>
GreenValue green_fiber(const SkewProduct<C>& fc, const std::optional<EscapeRegion>& region, const Complex& z,
                       const Complex& w, const GreenOptions& opts = {}) {
    const FloatSkewProduct f = fc.to_floating();
    const int d = f.d();
    auto direct = [&](const OrbitPoint& x, int n0, GreenStatus status) {
        return detail::direct_sequence(
            f, x, n0, opts,
            [&](int k, const OrbitPoint& y) { return detail::scaled_log_plus(d, n0 + k, y.w.log_abs()); }, status);
    };

    std::optional<EscapeRegion> reg = region;
    if (!reg) {
        const WeightSpec<Complex> spec = weight_spec(f);
        if (spec.dominant_monomial_ok) reg = certified_region(f, spec);
    }
    if (!reg) return direct(OrbitPoint{OrbitCoord(z), OrbitCoord(w)}, 0, GreenStatus::BestEffort);

    const bool finite_on_af = f.delta() < d || f.gamma() == 0;
    const OrbitClass oc = detail::walk(f, *reg, z, w, opts, [&](int n, const OrbitPoint& x) {
        if (!finite_on_af) return std::numeric_limits<LReal>::infinity();
        return undecided_bound(f, *reg, n, x);
    });
    if (oc.zero_fiber) return GreenValue::finite(0, 0, oc.n, GreenStatus::Certified);

    if (oc.status == OrbitStatus::EntersWR) {
        if (!finite_on_af) return GreenValue::pos_inf(oc.n, GreenStatus::Certified);
        const int N = oc.n;
        const Estimator est = make_estimator(f, *reg, oc.point);
        const LReal scale = detail::pow_inv(d, N);
        const EstimatorRun run = run_estimator(OrbitStepper(f), est, oc.point, opts.tol / (2 * scale), opts.n_max);
        const double v = static_cast<double>(scale * run.value);
        return GreenValue::finite(v, static_cast<double>(scale * run.tail) + detail::transport_slack(N, v),
                                  N + run.steps, GreenStatus::Certified);
    }
    if (finite_on_af && reg->kind == RegionKind::Nondegenerate) {
        const LReal b = undecided_bound(f, *reg, oc.n, oc.point);
        if (b <= opts.tol) return GreenValue::finite(0, static_cast<double>(b), oc.n, GreenStatus::Certified);
    }
    if (oc.status == OrbitStatus::Undecided) {
        if (finite_on_af) {
            const LReal b = undecided_bound(f, *reg, oc.n, oc.point);
            return GreenValue::finite(0, static_cast<double>(b), oc.n, GreenStatus::Undecided);
        }
        const ExtendedRational a = alpha(f);
        if (f.delta() == d && (!a.is_finite() || a.value() <= 0))
            return GreenValue::finite(0, 0, oc.n, GreenStatus::Undecided);
        return direct(oc.point, oc.n, GreenStatus::Undecided);
    }
    return direct(oc.point, oc.n, GreenStatus::BestEffort);
}

/// G = lim d^{-n} log|z_n^{-n gamma/d} w_n| for delta = d, gamma != 0.
template <class C>
GreenValue green_G(const SkewProduct<C>& fc, const std::optional<EscapeRegion>& region, const Complex& z,
                   const Complex& w, const GreenOptions& opts = {}) {
    const FloatSkewProduct f = fc.to_floating();
    if (f.delta() != f.d() || f.gamma() == 0) throw WrongCase("G needs delta = d and gamma != 0");
    const EscapeRegion reg = region ? *region : certified_region(f);
    const int d = f.d();
    const int gamma = f.gamma();

    const OrbitClass oc = detail::walk(f, reg, z, w, opts, [](int, const OrbitPoint&) {
        return std::numeric_limits<LReal>::infinity();
    });
    if (oc.zero_fiber) return GreenValue::neg_inf(oc.n, GreenStatus::Certified);
    if (oc.status == OrbitStatus::EntersWR) {
        const int N = oc.n;
        const LReal shift = LReal(N) * gamma / d;
        GreenValue gp = GreenValue::finite(0, 0, 0, GreenStatus::Certified);
        if (N > 0) gp = green_base(f.p(), z, {opts.tol / (4 * static_cast<double>(shift)), opts.n_max});
        const Estimator est = make_estimator(f, reg, oc.point);
        const LReal scale = detail::pow_inv(d, N);
        const EstimatorRun run = run_estimator(OrbitStepper(f), est, oc.point, opts.tol / (2 * scale), opts.n_max);
        const double v = static_cast<double>(scale * run.value - shift * gp.value);
        const double err = static_cast<double>(scale * run.tail + shift * gp.error_bound);
        return GreenValue::finite(v, err + detail::transport_slack(N, v), N + run.steps,
                                  weaker(GreenStatus::Certified, gp.status));
    }
    if (oc.status == OrbitStatus::Undecided) return GreenValue::neg_inf(oc.n, GreenStatus::Undecided);
    const int n0 = oc.n;
    return detail::direct_sequence(f, oc.point, n0, opts, [&](int k, const OrbitPoint& x) {
        const int n = n0 + k;
        const LReal lw = x.w.log_abs();
        const LReal lz = x.z.log_abs();
        if (std::isinf(lw) && lw < 0) return -std::numeric_limits<LReal>::infinity();
        if (n == 0) return lw;
        return detail::pow_inv(d, n) * (lw - LReal(n) * gamma / d * lz);
    });
}

/// G_f^alpha = lim lambda^{-n} log^+ max{(|z_n|+1)^alpha, |w_n|}.
template <class C>
GreenValue green_weighted(const SkewProduct<C>& fc, const std::optional<EscapeRegion>& region, const Complex& z,
                          const Complex& w, const GreenOptions& opts = {}) {
    const FloatSkewProduct f = fc.to_floating();
    const ExtendedRational a = alpha(f);
    if (!a.is_finite()) throw WrongCase("G_f^alpha needs a finite alpha");
    const double ad = to_double(a.value());

    if (f.delta() > f.d()) {
        GreenValue gp = green_base(f.p(), z, {opts.tol / std::max(1.0, std::fabs(ad)), opts.n_max});
        return GreenValue::finite(ad * gp.value, std::fabs(ad) * gp.error_bound, gp.iterations, gp.status);
    }
    if (f.delta() < f.d()) return green_fiber(f, region, z, w, opts);

    // delta = d: max{max(alpha, 0) G_p, G_z}.
    const GreenValue gz = green_fiber(f, region, z, w, opts);
    if (gz.kind == ValueKind::PosInf) return gz;
    const double ap = std::max(ad, 0.0);
    const GreenValue gp = green_base(f.p(), z, {opts.tol / std::max(1.0, ap), opts.n_max});
    const GreenValue base = GreenValue::finite(ap * gp.value, ap * gp.error_bound, gp.iterations, gp.status);
    if (gz.status == GreenStatus::Undecided && f.gamma() != 0) {
        return GreenValue::finite(base.value, base.error_bound, gz.iterations, GreenStatus::Undecided);
    }
    if (!gz.is_finite()) return base;
    const double v = std::max(base.value, gz.value);
    const double err = std::max(base.error_bound, gz.error_bound);
    return GreenValue::finite(v, err, std::max(gz.iterations, gp.iterations), weaker(gz.status, gp.status));
}

/// (n gamma d^{n-1})^{-1} log^+|Q_z^n(w)| at n = n_max, delta = d, gamma != 0.
template <class C>
GreenValue green_normalized(const SkewProduct<C>& fc, const Complex& z, const Complex& w, int n_max) {
    const FloatSkewProduct f = fc.to_floating();
    if (f.delta() != f.d() || f.gamma() == 0) throw WrongCase("normalized limit needs delta = d and gamma != 0");
    if (n_max < 1) throw DomainError("n >= 1 required");
    const int d = f.d();
    const int gamma = f.gamma();
    double log_r = 0;
    try {
        log_r = certified_region(f).log_r();
    } catch (const DominanceUnavailable&) {
    }
    if (w == Complex(0.0) && zero_fiber_invariant(f)) return GreenValue::finite(0, 0, n_max, GreenStatus::BestEffort);

    const OrbitStepper stepper(f);
    OrbitPoint x{OrbitCoord(z), OrbitCoord(w)};
    // A_k = log|w_k| / d^k, B_k = log|z_k| / d^k.
    LReal A = x.w.log_abs();
    LReal B = x.z.log_abs();
    const LReal A0 = A;
    LReal sumB = 0;
    LReal s = 1;
    bool forward = false;
    for (int k = 0; k < n_max; ++k) {
        sumB += B;
        if (forward) {
            A += LReal(gamma) / d * B;
            continue;
        }
        OrbitPoint y = stepper.step(x);
        if (exhausted(y)) {
            forward = true;
            A += LReal(gamma) / d * B;
            continue;
        }
        const LReal lz = x.z.log_abs(), lw = x.w.log_abs();
        const LReal lz1 = y.z.log_abs(), lw1 = y.w.log_abs();
        const LReal s1 = s / d;
        const bool finite = std::isfinite(lz) && std::isfinite(lw) && std::isfinite(lz1) && std::isfinite(lw1);
        if (finite) {
            const LReal rho = lw1 - gamma * lz - d * lw;
            const LReal sigma = lz1 - d * lz;
            A = A + (LReal(gamma) * lz + rho) * s1;
            B = B + sigma * s1;
            if (rho == 0 && sigma == 0 && k >= 1) forward = true;
        } else {
            A = lw1 * s1;
            B = lz1 * s1;
        }
        s = s1;
        x = y;
    }
    const LReal n = n_max;
    const LReal v = A > 0 ? LReal(d) * A / (n * gamma) : LReal(0);
    const LReal defect = std::isfinite(sumB) && std::isfinite(B) ? std::fabs(sumB / n - B) : LReal(0);
    LReal err = LReal(d) / (n * gamma) * (log_r + (std::isfinite(A0) ? std::fabs(A0) : LReal(0))) + defect;
    if (!std::isfinite(v)) return GreenValue::finite(0, std::numeric_limits<double>::infinity(), n_max, GreenStatus::BestEffort);
    return GreenValue::finite(static_cast<double>(v), static_cast<double>(err), n_max, GreenStatus::BestEffort);
}

namespace detail {

/// deg(f^n) / lambda^n in closed form where the growth formulas are equalities.
template <class C>
std::optional<LReal> closed_scaled_degree(const SkewProduct<C>& f, const ExtendedRational& a, int n) {
    const int delta = f.delta(), d = f.d(), gamma = f.gamma();
    if (gamma == 0 || delta > d) {
        if (a.value() <= 1) return LReal(1);
        return std::nullopt;
    }
    if (delta < d) {
        if (a.value() > 0) return std::nullopt;
        return 1 + LReal(gamma) / (d - delta) * (1 - std::pow(LReal(delta) / d, n));
    }
    if (a.is_finite() && a.value() > 0) return std::nullopt;
    return LReal(gamma) / d * n + 1;
}

}  // namespace detail

/// lim deg(f^n)^{-1} log^+|f^n(z, w)|_alpha.
template <class C>
GreenValue green_deg_normalized(const SkewProduct<C>& fc, const Complex& z, const Complex& w,
                                const GreenOptions& opts = {}, const ComposeOptions& copts = {}) {
    const FloatSkewProduct f = fc.to_floating();
    const ExtendedRational a = alpha(fc);
    if (f.delta() == f.d() && a.is_finite() && a.value() > 0)
        throw WrongCase("deg-normalized limit needs delta != d or alpha <= 0");
    const int lambda = f.lambda();
    const LReal al = a.is_finite() ? static_cast<LReal>(to_double(a.value())) : LReal(0);

    // Symbolic degrees are used where no closed form is exact.
    std::vector<std::optional<long long>> sym;
    int n_cap = opts.n_max;
    if (!detail::closed_scaled_degree(fc, a, 1)) {
        n_cap = std::max(1, static_cast<int>(std::floor(std::log(1e8) / std::log(double(lambda)))));
        n_cap = std::min(n_cap, opts.n_max);
        sym = deg_sequence(fc, n_cap, copts);
        while (!sym.empty() && !sym.back()) sym.pop_back();
        n_cap = static_cast<int>(sym.size());
        if (n_cap == 0) throw TermBudgetExceeded(copts.term_budget + 1, copts.term_budget);
    }
    auto scaled_deg = [&](int n) -> LReal {
        if (auto c = detail::closed_scaled_degree(fc, a, n)) return *c;
        return static_cast<LReal>(*sym[n - 1]) * detail::pow_inv(lambda, n);
    };
    auto log_norm = [&](const OrbitPoint& x) {
        const LReal lz = x.z.log_abs();
        const LReal lz1 = lz > 0 ? lz + std::log1p(std::exp(-lz)) : std::log1p(std::exp(lz));
        return std::max(al * lz1, x.w.log_abs());
    };

    const OrbitStepper stepper(f);
    OrbitPoint x{OrbitCoord(z), OrbitCoord(w)};
    LReal prev = 0;
    LReal delta_last = std::numeric_limits<LReal>::infinity();
    int n = 0;
    for (int k = 1; k <= n_cap; ++k) {
        OrbitPoint y = stepper.step(x);
        if (exhausted(y)) break;
        x = y;
        const LReal v = detail::pow_inv(lambda, k) * log_plus(log_norm(x)) / scaled_deg(k);
        delta_last = std::fabs(v - prev);
        prev = v;
        n = k;
        if (k >= 8 && delta_last <= opts.tol * 1e-3) break;
    }
    return GreenValue::finite(static_cast<double>(prev), static_cast<double>(delta_last), n, GreenStatus::BestEffort);
}

struct AsymptoticRow {
    Complex z;
    GreenValue lhs;
    GreenValue gh;
    double difference = 0;
};

/// |G_z^alpha(c z^alpha) - G_h(c)| along a ladder of z values.
template <class C>
std::vector<AsymptoticRow> asymptotic_check(const SkewProduct<C>& fc, const Complex& c,
                                            const std::vector<Complex>& z_ladder, const GreenOptions& opts = {}) {
    const FloatSkewProduct f = fc.to_floating();
    const WeightSpec<Complex> spec = weight_spec(f);
    if (f.delta() == f.d() || !spec.monomial_alpha || !spec.alpha.is_finite() ||
        spec.alpha.value() != *spec.monomial_alpha)
        throw WrongCase("asymptotics need delta != d and alpha = gamma/(delta - d)");
    const EscapeRegion reg = certified_region(f, spec);
    const Poly1<Complex> h1 = h_restricted(spec.h);
    const GreenValue gh = green_base(h1, c, opts);
    const double a = to_double(spec.alpha.value());
    std::vector<AsymptoticRow> rows;
    for (const Complex& z : z_ladder) {
        const Complex w = c * std::exp(a * std::log(std::abs(z)));
        AsymptoticRow row;
        row.z = z;
        row.lhs = f.delta() > f.d() ? green_fiber_ratio(f, reg, z, w, opts) : green_fiber(f, reg, z, w, opts);
        row.gh = gh;
        row.difference = std::fabs(row.lhs.as_double() - gh.value);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace skewgreen
