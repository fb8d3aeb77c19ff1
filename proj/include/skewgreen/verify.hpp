#pragma once

// Self-verification suite: closed forms, proof bounds, functional equations,
// symbolic identities and agreement with the high-precision oracle. The
// acceptance binary runs it at full size; the CLI "verify" runs it reduced.

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skewgreen/degree.hpp"
#include "skewgreen/green.hpp"
#include "skewgreen/mapfile.hpp"
#include "skewgreen/oracle.hpp"
#include "skewgreen/stability.hpp"

namespace skewgreen::verify {

struct Config {
    /// Multiplies every sample count; 1.0 is the full suite.
    double scale = 1.0;
    std::uint64_t seed = 20240611;
    PrecisionConfig oracle;
    ComposeOptions compose;
};

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// The named maps every criterion draws from.
struct Corpus {
    SkewProduct<ExactComplex> fast_base = parse_map("p: z^3\nq: z^2 w^2").map;
    SkewProduct<ExactComplex> cubic_fiber = parse_map("p: z^2\nq: z w^3").map;
    SkewProduct<ExactComplex> equal_monomial = parse_map("p: z^2\nq: z w^2").map;
    SkewProduct<ExactComplex> equal_mixed = parse_map("p: z^2\nq: z w^2 + z^2 w").map;
    SkewProduct<ExactComplex> root_family = parse_map("p: z^2\nq: z w^2 - z^4 + z^3").map;
    SkewProduct<ExactComplex> shifted_conjugate = parse_map("p: z^2\nq: z w^2 + 2 z^2 w + z^3 - z^2").map;
    SkewProduct<ExactComplex> pure_power = parse_map("p: z^2\nq: z w^2 + w^2").map;
    SkewProduct<ExactComplex> nondegenerate = parse_map("p: z^2 - 1\nq: w^2 + z").map;
    SkewProduct<ExactComplex> fast_base_perturbed = parse_map("p: z^3\nq: z^2 w^2 + z^5").map;
    SkewProduct<ExactComplex> cubic_fiber_perturbed = parse_map("p: z^2\nq: z w^3 + w^3 + w^2").map;
    SkewProduct<ExactComplex> integer_weight = parse_map("p: z^3 + z\nq: z^2 w^2 + z^4 w + z^5").map;
};

namespace detail {

using Rng = std::mt19937_64;

inline double uniform(Rng& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }

inline Complex polar_sample(Rng& g, double r) { return std::polar(r, uniform(g, 0, 2 * std::numbers::pi)); }

/// |x| log-uniform in [lo, hi].
inline Complex log_uniform(Rng& g, double lo, double hi) {
    return polar_sample(g, std::exp(uniform(g, std::log(lo), std::log(hi))));
}

inline int count(double scale, int n) { return std::max(1, static_cast<int>(std::lround(scale * n))); }

/// A point of W_R, with magnitudes up to e^spread beyond the boundary.
inline std::pair<Complex, Complex> region_point(Rng& g, const EscapeRegion& reg, double spread = 4) {
    const double lR = std::log(reg.R);
    const double a = static_cast<double>(reg.alpha);
    double lz = lR + uniform(g, 1e-3, spread);
    double lw = 0;
    switch (reg.kind) {
        case RegionKind::FiberFree: lw = uniform(g, -spread, spread); break;
        case RegionKind::GammaNonzero: lw = lR + a * lz + uniform(g, 1e-3, spread); break;
        case RegionKind::Nondegenerate:
            lz = uniform(g, -spread, lR + spread);
            lw = std::max(lR + a * lz, (a + 1) * lR) + uniform(g, 1e-3, spread);
            break;
    }
    return {polar_sample(g, std::exp(lz)), polar_sample(g, std::exp(lw))};
}

/// Relative padding for floating comparisons of logarithms.
inline double slack(double v) { return 1e-12 * (1 + std::fabs(v)); }

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

inline FloatSkewProduct flt(const SkewProduct<ExactComplex>& f) { return normalize_monic(f).map; }

}  // namespace detail

inline Result alpha_exactness(const Corpus& c) {
    struct Row {
        const SkewProduct<ExactComplex>* f;
        std::string expected;
    };
    const std::vector<Row> rows{{&c.fast_base, "2/1"},       {&c.cubic_fiber, "-1/1"},
                                {&c.root_family, "3/2"},     {&c.equal_mixed, "1/1"},
                                {&c.pure_power, "-inf"},     {&c.equal_monomial, "-inf"},
                                {&c.nondegenerate, "1/2"},   {&c.shifted_conjugate, "1/1"},
                                {&c.cubic_fiber_perturbed, "-1/1"}, {&c.integer_weight, "2/1"}};
    Result r{1, "alpha exactness", false, {}, 0};
    int bad = 0;
    for (const auto& row : rows) {
        const ExtendedRational a = alpha(*row.f);
        const std::string got = a.is_finite() ? to_string(a.value()) : "-inf";
        if (got != row.expected) {
            ++bad;
            r.detail += format_map(*row.f) + " gave " + got + "; ";
        }
    }
    r.pass = bad == 0;
    if (r.pass) r.detail = std::to_string(rows.size()) + " maps exact";
    return r;
}

inline Result monomial_closed_forms(const Corpus& c, const Config& cfg) {
    Result r{2, "monomial closed forms", false, {}, 0};
    detail::Rng g(cfg.seed + 2);
    const GreenOptions opts{1e-9, 10000};
    const int N = detail::count(cfg.scale, 100);
    int checked = 0, bad = 0;
    std::ostringstream why;
    auto check = [&](const char* what, const GreenValue& v, double truth, const Complex& z, const Complex& w) {
        ++checked;
        bool ok;
        if (std::isinf(truth)) {
            ok = v.as_double() == truth;
        } else {
            ok = v.is_finite() && std::fabs(v.value - truth) <= v.error_bound + detail::slack(truth) &&
                 v.error_bound <= opts.tol;
        }
        if (!ok && bad++ < 3)
            why << what << " at (" << z << "," << w << "): " << v.str() << " vs " << truth << "; ";
    };

    const FloatSkewProduct f43 = detail::flt(c.fast_base);
    const FloatSkewProduct f51 = detail::flt(c.cubic_fiber);
    const FloatSkewProduct f61 = detail::flt(c.equal_monomial);
    const EscapeRegion r43 = certified_region(f43);
    const EscapeRegion r51 = certified_region(f51);
    const EscapeRegion r61 = certified_region(f61);
    for (int i = 0; i < N; ++i) {
        const Complex z = detail::log_uniform(g, 0.1, 10);
        const Complex w = detail::log_uniform(g, 0.1, 1e3);
        const double lz = std::log(std::abs(z)), lw = std::log(std::abs(w));

        // fast base: G_f^alpha = 2 log^+|z|; on A_f, G_z^alpha = log|w/z^2| and G_z = +inf.
        check("fast-base weighted", green_weighted(f43, r43, z, w, opts), 2 * std::max(lz, 0.0), z, w);
        const GreenValue ga = green_fiber_ratio(f43, r43, z, w, opts);
        if (lz > 0 && lw - 2 * lz > 1e-3 && ga.status == GreenStatus::Certified) {
            check("fast-base ratio", ga, lw - 2 * lz, z, w);
            check("fast-base fiber", green_fiber(f43, r43, z, w, opts), INFINITY, z, w);
        }

        // cubic fiber: G_z = log^+|z w|.
        check("cubic-fiber fiber", green_fiber(f51, r51, z, w, opts), std::max(lz + lw, 0.0), z, w);

        // equal degree: G_z = +inf for |z| > 1, w != 0; log^+|w| on |z| = 1; 0 for |z| < 1; G = log|w|.
        const GreenValue gz = green_fiber(f61, r61, z, w, opts);
        if (lz > 1e-3) check("equal-degree fiber", gz, INFINITY, z, w);
        if (lz < -1e-3) check("equal-degree fiber", gz, 0.0, z, w);
        if (lz > 1e-3) check("equal-degree G", green_G(f61, r61, z, w, opts), lw, z, w);
    }
    r.pass = bad == 0;
    r.detail = std::to_string(checked) + " values, " + std::to_string(bad) + " mismatches" +
               (bad ? ": " + why.str() : std::string());
    return r;
}

/// Maps whose escape regions carry telescoping bounds.
inline std::vector<std::pair<std::string, const SkewProduct<ExactComplex>*>> region_corpus(const Corpus& c) {
    return {{"fast base", &c.fast_base},
            {"cubic fiber", &c.cubic_fiber},
            {"equal monomial", &c.equal_monomial},
            {"equal mixed", &c.equal_mixed},
            {"pure power", &c.pure_power},
            {"nondegenerate", &c.nondegenerate},
            {"fast base perturbed", &c.fast_base_perturbed},
            {"cubic fiber perturbed", &c.cubic_fiber_perturbed},
            {"integer weight", &c.integer_weight}};
}

inline Result telescoping_bounds(const Corpus& c, const Config& cfg) {
    Result r{3, "telescoping bounds", false, {}, 0};
    detail::Rng g(cfg.seed + 3);
    const int N = detail::count(cfg.scale, 1000);
    long long increments = 0, violations = 0;
    std::ostringstream why;
    for (const auto& [name, fe] : region_corpus(c)) {
        const FloatSkewProduct f = detail::flt(*fe);
        const EscapeRegion reg = certified_region(f);
        for (int i = 0; i < N; ++i) {
            const auto [z, w] = detail::region_point(g, reg);
            for (const TelescopeStep& s : telescoping_trace(f, reg, z, w, 12)) {
                ++increments;
                if (s.increment > s.bound + 1e-12) {
                    if (violations++ < 3)
                        why << name << " k=" << s.k << " inc=" << s.increment << " bound=" << s.bound << "; ";
                }
            }
        }
    }
    r.pass = violations == 0 && increments > 0;
    r.detail = std::to_string(increments) + " increments, " + std::to_string(violations) + " violations" +
               (violations ? ": " + why.str() : std::string());
    return r;
}

namespace detail {

/// A random point whose evaluation by eval is Certified and finite.
template <class Eval>
std::optional<std::pair<Complex, Complex>> certified_point(Rng& g, const EscapeRegion& reg, Eval&& eval,
                                                            int attempts = 50) {
    for (int i = 0; i < attempts; ++i) {
        const double lR = std::log(reg.R);
        const Complex z = log_uniform(g, std::exp(lR * 0.2), std::exp(lR + 3));
        const Complex w = log_uniform(g, 1e-2, std::exp(std::max(3.0, lR * (1 + std::fabs(double(reg.alpha))) + 6)));
        const GreenValue v = eval(z, w);
        if (v.is_finite() && v.status == GreenStatus::Certified && v.value > 0) return std::make_pair(z, w);
    }
    return std::nullopt;
}

}  // namespace detail

inline Result functional_equations(const Corpus& c, const Config& cfg) {
    Result r{4, "functional equations", false, {}, 0};
    detail::Rng g(cfg.seed + 4);
    const double tol = 1e-9;
    const int N = detail::count(cfg.scale, 1000);
    int checked = 0, bad = 0;
    std::ostringstream why;
    auto record = [&](const char* what, double lhs, double limit, const Complex& z, const Complex& w) {
        ++checked;
        if (!(std::fabs(lhs) <= limit)) {
            if (bad++ < 3) why << what << " at (" << z << "," << w << ") residual " << lhs << "; ";
        }
    };

    // Base: G_p(p(z)) = delta G_p(z).
    for (const auto* fe : {&c.fast_base_perturbed, &c.nondegenerate, &c.integer_weight}) {
        const FloatSkewProduct f = detail::flt(*fe);
        const int delta = f.delta();
        for (int i = 0; i < N / 3; ++i) {
            const Complex z = detail::log_uniform(g, 0.1, 50);
            const GreenValue outer = green_base(f.p(), f.p()(z), {tol, 10000});
            const GreenValue inner = green_base(f.p(), z, {tol / delta, 10000});
            record("base", outer.value - delta * inner.value, 2 * tol, z, 0.0);
        }
    }

    // Fiber: G_{p(z)}(q_z(w)) = d G_z(w) where finite.
    for (const auto* fe : {&c.cubic_fiber_perturbed, &c.nondegenerate, &c.cubic_fiber}) {
        const FloatSkewProduct f = detail::flt(*fe);
        const EscapeRegion reg = certified_region(f);
        const int d = f.d();
        for (int i = 0; i < N / 3; ++i) {
            auto pt = detail::certified_point(g, reg, [&](const Complex& z, const Complex& w) {
                return green_fiber(f, reg, z, w, {tol / d, 10000});
            });
            if (!pt) continue;
            const auto [z, w] = *pt;
            const auto [z1, w1] = apply(f, z, w);
            const GreenValue outer = green_fiber(f, reg, z1, w1, {tol, 10000});
            const GreenValue inner = green_fiber(f, reg, z, w, {tol / d, 10000});
            if (outer.status != GreenStatus::Certified) continue;
            record("fiber", outer.value - d * inner.value, 2 * tol, z, w);
        }
    }

    // delta = d: G(f) = d G + gamma G_p.
    for (const auto* fe : {&c.equal_monomial, &c.equal_mixed, &c.pure_power}) {
        const FloatSkewProduct f = detail::flt(*fe);
        const EscapeRegion reg = certified_region(f);
        const int d = f.d();
        const int gamma = f.gamma();
        for (int i = 0; i < N / 3; ++i) {
            const Complex z = detail::log_uniform(g, 1.05, 20);
            const Complex w = detail::log_uniform(g, 0.05, 1e3);
            const GreenValue inner = green_G(f, reg, z, w, {tol / d, 10000});
            if (!inner.is_finite() || inner.status != GreenStatus::Certified) continue;
            const auto [z1, w1] = apply(f, z, w);
            const GreenValue outer = green_G(f, reg, z1, w1, {tol, 10000});
            const GreenValue gp = green_base(f.p(), z, {tol / gamma, 10000});
            if (!outer.is_finite() || outer.status != GreenStatus::Certified) continue;
            record("G", outer.value - d * inner.value - gamma * gp.value, 3 * tol, z, w);
        }
    }
    r.pass = bad == 0 && checked >= N / 2;
    r.detail = std::to_string(checked) + " residuals, " + std::to_string(bad) + " above limit" +
               (bad ? ": " + why.str() : std::string());
    return r;
}

inline Result asymptotics(const Corpus& c, const Config& cfg) {
    Result r{5, "weighted asymptotics", false, {}, 0};
    detail::Rng g(cfg.seed + 5);
    const GreenOptions opts{1e-12, 10000};
    const int N = detail::count(cfg.scale, 10);
    const std::vector<Complex> ladder{1e2, 1e4, 1e6};
    int bad = 0;
    double worst_last = 0;
    std::ostringstream why;
    for (const auto* fe : {&c.fast_base_perturbed, &c.cubic_fiber_perturbed}) {
        const FloatSkewProduct f = detail::flt(*fe);
        for (int i = 0; i < N; ++i) {
            const Complex cc = detail::polar_sample(g, detail::uniform(g, 1.5, 3));
            const auto rows = asymptotic_check(f, cc, ladder, opts);
            bool ok = rows.back().difference < 0.01;
            for (std::size_t k = 1; k < rows.size(); ++k) ok = ok && rows[k].difference < rows[k - 1].difference;
            worst_last = std::max(worst_last, rows.back().difference);
            if (!ok && bad++ < 3) {
                why << format_map(*fe) << " c=" << cc << ":";
                for (const auto& row : rows) why << ' ' << row.difference;
                why << "; ";
            }
        }
    }
    r.pass = bad == 0;
    std::ostringstream d;
    d << 2 * N << " ladders, worst difference at |z|=1e6: " << worst_last;
    r.detail = d.str() + (bad ? "; " + why.str() : std::string());
    return r;
}

inline Result normalized_limit(const Corpus& c) {
    Result r{6, "normalized equal-degree limit", false, {}, 0};
    const GreenValue v = green_normalized(detail::flt(c.equal_monomial), {2, 0}, {3, 0}, 100);
    const double diff = std::fabs(v.value - std::log(2.0));
    r.pass = diff <= 0.05;
    r.detail = v.str() + ", |value - log 2| = " + std::to_string(diff);
    return r;
}

inline Result degree_growth(const Corpus& c, const Config& cfg) {
    Result r{7, "degree growth", false, {}, 0};
    int bad = 0;
    std::ostringstream why;
    const std::vector<const SkewProduct<ExactComplex>*> maps{
        &c.fast_base, &c.cubic_fiber, &c.equal_monomial, &c.equal_mixed, &c.root_family,
        &c.pure_power, &c.nondegenerate, &c.fast_base_perturbed, &c.cubic_fiber_perturbed, &c.integer_weight};
    for (const auto* fe : maps) {
        const int n_max = fe->q().size() > 2 ? 4 : 5;
        const DegreeGrowth dg = check_degree_growth(*fe, alpha(*fe), n_max, cfg.compose);
        for (const auto& rep : dg.reports) {
            const bool eq_ok = !rep.equality || !rep.exact || Rational(*rep.exact) == rep.lower;
            if (!rep.within_bounds || !eq_ok) {
                if (bad++ < 3) why << format_map(*fe) << " n=" << rep.n << "; ";
            }
        }
        if (!dg.ok() && bad++ < 3) why << "weight growth " << format_map(*fe) << "; ";
    }
    auto expect_seq = [&](const SkewProduct<ExactComplex>& f, std::vector<long long> want) {
        const auto got = deg_sequence(f, static_cast<int>(want.size()), cfg.compose);
        for (std::size_t i = 0; i < want.size(); ++i)
            if (!got[i] || *got[i] != want[i]) {
                if (bad++ < 3) why << format_map(f) << " n=" << i + 1 << "; ";
            }
    };
    expect_seq(c.cubic_fiber, {4, 14, 46, 146, 454});
    expect_seq(c.equal_monomial, {3, 8, 20, 48, 112});
    r.pass = bad == 0;
    r.detail = std::to_string(maps.size()) + " maps, " + std::to_string(bad) + " failures" +
               (bad ? ": " + why.str() : std::string());
    return r;
}

inline Result stability_table(const Corpus& c) {
    Result r{8, "stability truth table", false, {}, 0};
    struct Row {
        SkewProduct<ExactComplex> f;
        int rr, s;
        bool stable;
        LinfBehavior behavior;
    };
    const auto m = [](const char* t) { return parse_map(t).map; };
    const std::vector<Row> rows{
        {c.fast_base, 1, 2, true, LinfBehavior::InducedByH},
        {c.fast_base, 1, 3, true, LinfBehavior::ContractsToPoint},
        {c.fast_base, 1, 1, false, LinfBehavior::ContractsToIndeterminacy},
        {c.fast_base_perturbed, 1, 2, true, LinfBehavior::InducedByH},
        {c.fast_base_perturbed, 2, 3, false, LinfBehavior::ContractsToIndeterminacy},
        {c.integer_weight, 1, 2, true, LinfBehavior::InducedByH},
        {c.integer_weight, 1, 1, false, LinfBehavior::ContractsToIndeterminacy},
        {m("p: z^2\nq: w^2"), 1, 1, true, LinfBehavior::InducedByH},
        {m("p: z^2\nq: w^3 + z w"), 2, 1, true, LinfBehavior::ContractsToPoint},
        {c.nondegenerate, 2, 1, true, LinfBehavior::InducedByH},
        {c.nondegenerate, 1, 1, true, LinfBehavior::InducedByH},
        {c.equal_mixed, 1, 1, false, LinfBehavior::ContractsToIndeterminacy},
        {c.cubic_fiber, 3, 1, false, LinfBehavior::ContractsToIndeterminacy},
        {c.cubic_fiber, 1, 1, false, LinfBehavior::ContractsToIndeterminacy},
        {c.equal_monomial, 1, 1, false, LinfBehavior::ContractsToIndeterminacy},
    };
    int bad = 0, lifts = 0;
    std::ostringstream why;
    for (const auto& row : rows) {
        const WeightSpec<ExactComplex> spec = weight_spec(row.f);
        const auto v = is_algebraically_stable(row.f, spec, row.rr, row.s);
        bool ok = v.algebraically_stable == row.stable && v.linf_behavior == row.behavior && v.witness_consistent;
        if (row.f.gamma() == 0 || row.f.delta() > row.f.d()) {
            ++lifts;
            ok = ok && v.polynomial_lift == (Rational(row.s, row.rr) >= spec.alpha.value());
        }
        if (!ok && bad++ < 3)
            why << format_map(row.f) << " (r,s)=(" << row.rr << "," << row.s << ") gave "
                << (v.algebraically_stable ? "stable " : "unstable ") << to_string(v.linf_behavior) << "; ";
    }
    r.pass = bad == 0;
    r.detail = std::to_string(rows.size()) + " combinations (" + std::to_string(lifts) + " lift checks), " +
               std::to_string(bad) + " mismatches" + (bad ? ": " + why.str() : std::string());
    return r;
}

inline Result weighted_part_identity(const Corpus& c, const Config& cfg) {
    Result r{9, "weighted-part identity", false, {}, 0};
    const SkewProduct<ExactComplex>& f = c.integer_weight;
    const WeightSpec<ExactComplex> spec = weight_spec(f);
    const Rational& a = spec.alpha.value();
    if (f.delta() <= f.d() || denominator(a) != 1) {
        r.detail = "map does not have integer alpha with delta > d";
        return r;
    }
    const int ai = static_cast<int>(numerator(a).convert_to<long>());
    const int delta = f.delta();
    const Poly2<ExactComplex> Q2 = symbolic_Qzn(f, 2, cfg.compose);
    const Poly2<ExactComplex> top = weighted_top_part(Q2, spec.alpha);

    // z^{alpha delta^2} (h o h)(z^{-alpha} w), with h(c) = h(1, c).
    const Poly1<ExactComplex> h1 = h_restricted(spec.h);
    const Poly1<ExactComplex> hh = h1.compose(h1);
    Poly2<ExactComplex> expected;
    for (const auto& [k, coef] : hh.terms()) expected.add_term({ai * delta * delta - ai * k, k}, coef);
    r.pass = top == expected && weight_of_poly(Q2, spec.alpha) == a * delta * delta;
    r.detail = "top part " + format_poly(top) + (r.pass ? " matches" : " differs from " + format_poly(expected));
    return r;
}

inline Result oracle_agreement(const Corpus& c, const Config& cfg) {
    Result r{10, "oracle agreement", false, {}, 0};
    detail::Rng g(cfg.seed + 10);
    const int N = detail::count(cfg.scale, 50);
    const double tol = 1e-9;
    int checked = 0, bad = 0;
    double worst = 0;
    std::ostringstream why;
    struct Entry {
        const SkewProduct<ExactComplex>* f;
        OracleFunction fn;
        int n;
    };
    const std::vector<Entry> entries{
        {&c.fast_base, OracleFunction::GzAlpha, 40},     {&c.fast_base_perturbed, OracleFunction::GzAlpha, 40},
        {&c.integer_weight, OracleFunction::GzAlpha, 40}, {&c.cubic_fiber, OracleFunction::Gz, 90},
        {&c.cubic_fiber_perturbed, OracleFunction::Gz, 90}, {&c.nondegenerate, OracleFunction::Gz, 60},
        {&c.equal_mixed, OracleFunction::G, 60},         {&c.equal_monomial, OracleFunction::G, 60},
        {&c.pure_power, OracleFunction::G, 60}};
    for (const auto& e : entries) {
        const Normalized nm = normalize_monic(*e.f);
        const FloatSkewProduct& f = nm.map;
        const EscapeRegion reg = certified_region(f);
        auto eval = [&](const Complex& z, const Complex& w) {
            switch (e.fn) {
                case OracleFunction::GzAlpha: return green_fiber_ratio(f, reg, z, w, {tol, 10000});
                case OracleFunction::G: return green_G(f, reg, z, w, {tol, 10000});
                default: return green_fiber(f, reg, z, w, {tol, 10000});
            }
        };
        for (int i = 0; i < N; ++i) {
            const auto pt = detail::certified_point(g, reg, eval);
            if (!pt) continue;
            const auto [z, w] = *pt;
            const GreenValue v = eval(z, w);
            const double b1 = brute_green(f, z, w, e.n, e.fn, cfg.oracle);
            const double b0 = brute_green(f, z, w, e.n - 1, e.fn, cfg.oracle);
            const double diff = std::fabs(v.value - b1);
            const double allowed = v.error_bound + std::fabs(b1 - b0) + detail::slack(b1);
            ++checked;
            worst = std::max(worst, diff);
            if (!(diff <= allowed) && bad++ < 3)
                why << format_map(*e.f) << " at (" << z << "," << w << "): " << v.str() << " oracle " << b1 << "; ";
        }
    }
    r.pass = bad == 0 && checked >= static_cast<int>(entries.size()) * N / 2;
    std::ostringstream d;
    d << checked << " points, worst |green - oracle| = " << worst << ", " << bad << " failures";
    r.detail = d.str() + (bad ? ": " + why.str() : std::string());
    return r;
}

inline Result harmonicity(const Corpus& c, const Config& cfg) {
    Result r{11, "harmonicity probe", false, {}, 0};
    detail::Rng g(cfg.seed + 11);
    const int N = detail::count(cfg.scale, 20);
    const GreenOptions opts{1e-12, 10000};
    int checked = 0, bad = 0;
    double worst = 0;
    for (const auto* fe : {&c.fast_base_perturbed, &c.cubic_fiber_perturbed, &c.integer_weight, &c.cubic_fiber}) {
        const FloatSkewProduct f = detail::flt(*fe);
        const EscapeRegion reg = certified_region(f);
        const bool ratio = f.delta() > f.d();
        auto eval = [&](const Complex& z, const Complex& w) {
            return ratio ? green_fiber_ratio(f, reg, z, w, opts) : green_fiber(f, reg, z, w, opts);
        };
        for (int i = 0; i < N; ++i) {
            const auto pt = detail::certified_point(g, reg, eval);
            if (!pt) continue;
            const auto [z, w] = *pt;
            const double center = eval(z, w).value;
            double mean = 0;
            bool certified = true;
            for (int k = 0; k < 16; ++k) {
                const GreenValue v = eval(z, w + std::polar(1e-3, 2 * std::numbers::pi * k / 16));
                certified = certified && v.status == GreenStatus::Certified;
                mean += v.value / 16;
            }
            if (!certified) continue;
            ++checked;
            worst = std::max(worst, std::fabs(mean - center));
            if (std::fabs(mean - center) > 1e-5) ++bad;
        }
    }
    r.pass = bad == 0 && checked >= N;
    std::ostringstream d;
    d << checked << " circles, worst |mean - center| = " << worst;
    r.detail = d.str();
    return r;
}

/// Runs every check, printing one line each; true when all pass.
inline bool run_suite(std::ostream& os, const Config& cfg = {}) {
    const Corpus corpus;
    const std::vector<std::pair<std::string, std::function<Result()>>> checks{
        {"alpha exactness", [&] { return alpha_exactness(corpus); }},
        {"monomial closed forms", [&] { return monomial_closed_forms(corpus, cfg); }},
        {"telescoping bounds", [&] { return telescoping_bounds(corpus, cfg); }},
        {"functional equations", [&] { return functional_equations(corpus, cfg); }},
        {"weighted asymptotics", [&] { return asymptotics(corpus, cfg); }},
        {"normalized equal-degree limit", [&] { return normalized_limit(corpus); }},
        {"degree growth", [&] { return degree_growth(corpus, cfg); }},
        {"stability truth table", [&] { return stability_table(corpus); }},
        {"weighted-part identity", [&] { return weighted_part_identity(corpus, cfg); }},
        {"oracle agreement", [&] { return oracle_agreement(corpus, cfg); }},
        {"harmonicity probe", [&] { return harmonicity(corpus, cfg); }},
    };
    bool all = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        detail::Timer t;
        Result res{static_cast<int>(i + 1), checks[i].first, false, {}, 0};
        try {
            res = checks[i].second();
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = t.seconds();
        all = all && res.pass;
        char head[96];
        std::snprintf(head, sizeof head, "[%s] %2d %-30s (%.2fs) ", res.pass ? "PASS" : "FAIL", res.id,
                      res.name.c_str(), res.seconds);
        os << head << res.detail << '\n';
        os.flush();
    }
    return all;
}

}  // namespace skewgreen::verify
