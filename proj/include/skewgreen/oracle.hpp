#pragma once

// Brute-force references that share no code with the green estimators:
// MPFR orbit iteration with a log-magnitude fallback, raw definitional
// sequences of every Green function, and an independent symbolic Q_z^n.

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "skewgreen/algebra.hpp"
#include "skewgreen/weights.hpp"

namespace skewgreen {

struct PrecisionConfig {
    int mantissa_bits = 256;
    int n_max = 100000;
};

namespace oracle {

/// RAII MPFR real at a fixed precision; binary results take the left precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(mpfr_prec_t prec, double x) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    friend Real operator+(const Real& a, const Real& b) { Real r(a.prec()); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r(a.prec()); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r(a.prec()); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r(a.prec()); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    Real scaled(long k) const { Real r(prec()); mpfr_mul_si(r.v_, v_, k, MPFR_RNDN); return r; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long exponent() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

    static Real log(const Real& a) { Real r(a.prec()); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r; }
    static Real exp(const Real& a) { Real r(a.prec()); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r; }
    static Real log1p(const Real& a) { Real r(a.prec()); mpfr_log1p(r.v_, a.v_, MPFR_RNDN); return r; }
    static Real cos(const Real& a) { Real r(a.prec()); mpfr_cos(r.v_, a.v_, MPFR_RNDN); return r; }
    static Real sin(const Real& a) { Real r(a.prec()); mpfr_sin(r.v_, a.v_, MPFR_RNDN); return r; }
    static Real hypot(const Real& a, const Real& b) { Real r(a.prec()); mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    static Real atan2(const Real& y, const Real& x) { Real r(y.prec()); mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN); return r; }
    static Real neg_inf(mpfr_prec_t p) { Real r(p); mpfr_set_inf(r.v_, -1); return r; }
    static Real pi(mpfr_prec_t p) { Real r(p); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    static Real from_rational(mpfr_prec_t p, const Rational& q) {
        Real r(p);
        mpfr_set_q(r.v_, q.backend().data(), MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

/// Nonzero complex number as (log|x|, arg x); zero has log|x| = -inf.
struct LogPolar {
    Real la;
    Real arg;
};

/// A coordinate held either as re + i im or, once huge or tiny, in log-polar form.
struct HPValue {
    bool log_form = false;
    Real re, im;
    LogPolar lp;

    explicit HPValue(mpfr_prec_t p) : re(p), im(p), lp{Real::neg_inf(p), Real(p)} {}

    bool is_zero() const { return log_form ? lp.la.is_inf() && lp.la.sign() < 0 : re.is_zero() && im.is_zero(); }

    Real log_abs() const {
        if (log_form) return lp.la;
        if (is_zero()) return Real::neg_inf(re.prec());
        return Real::log(Real::hypot(re, im));
    }

    LogPolar polar() const {
        if (log_form) return lp;
        return {log_abs(), Real::atan2(im, re)};
    }

    std::complex<double> to_complex() const {
        if (!log_form) return {re.to_double(), im.to_double()};
        const double m = std::exp(lp.la.to_double());
        return std::polar(m, std::fmod(lp.arg.to_double(), 2 * M_PI));
    }
};

inline void demote(HPValue& x) {
    constexpr long kLimit = 1L << 40;
    if (x.log_form || x.is_zero()) return;
    const long e = std::max(x.re.exponent(), x.im.exponent());
    if (e > kLimit || e < -kLimit) {
        x.lp = x.polar();
        x.log_form = true;
    }
}

/// Evaluates sum c z^a w^b, linear when both inputs are linear, log-polar otherwise.
template <class Coeffs>
HPValue evaluate(const Coeffs& terms, const HPValue& z, const HPValue& w, mpfr_prec_t p) {
    HPValue out(p);
    if (!z.log_form && !w.log_form) {
        Real sr(p), si(p);
        for (const auto& [ab, c] : terms) {
            Real tr = Real::from_rational(p, c.real());
            Real ti = Real::from_rational(p, c.imag());
            for (int k = 0; k < ab.first; ++k) {
                Real nr = tr * z.re - ti * z.im;
                ti = tr * z.im + ti * z.re;
                tr = nr;
            }
            for (int k = 0; k < ab.second; ++k) {
                Real nr = tr * w.re - ti * w.im;
                ti = tr * w.im + ti * w.re;
                tr = nr;
            }
            sr = sr + tr;
            si = si + ti;
        }
        out.re = sr;
        out.im = si;
        demote(out);
        return out;
    }
    const LogPolar lz = z.polar();
    const LogPolar lw = w.polar();
    std::vector<LogPolar> parts;
    for (const auto& [ab, c] : terms) {
        if (ab.first > 0 && z.is_zero()) continue;
        if (ab.second > 0 && w.is_zero()) continue;
        const Real cr = Real::from_rational(p, c.real());
        const Real ci = Real::from_rational(p, c.imag());
        Real la = Real::log(Real::hypot(cr, ci));
        Real arg = Real::atan2(ci, cr);
        if (ab.first > 0) {
            la = la + lz.la.scaled(ab.first);
            arg = arg + lz.arg.scaled(ab.first);
        }
        if (ab.second > 0) {
            la = la + lw.la.scaled(ab.second);
            arg = arg + lw.arg.scaled(ab.second);
        }
        parts.push_back({la, arg});
    }
    if (parts.empty()) {
        out.log_form = true;
        return out;
    }
    Real top = parts.front().la;
    for (const auto& t : parts)
        if (top < t.la) top = t.la;
    Real sr(p), si(p);
    for (const auto& t : parts) {
        const Real m = Real::exp(t.la - top);
        sr = sr + m * Real::cos(t.arg);
        si = si + m * Real::sin(t.arg);
    }
    out.log_form = true;
    if (sr.is_zero() && si.is_zero()) return out;
    out.lp = {top + Real::log(Real::hypot(sr, si)), Real::atan2(si, sr)};
    return out;
}

using TermList = std::vector<std::pair<std::pair<int, int>, ExactComplex>>;

template <class C>
TermList term_list(const Poly2<C>& q) {
    TermList out;
    for (const auto& [m, c] : q.terms()) {
        if constexpr (CoeffTraits<C>::exact) {
            out.push_back({{m.z, m.w}, c});
        } else {
            out.push_back({{m.z, m.w}, ExactComplex(Rational(c.real()), Rational(c.imag()))});
        }
    }
    return out;
}

template <class C>
TermList term_list(const Poly1<C>& p) {
    Poly2<C> q;
    for (const auto& [e, c] : p.terms()) q.add_term({e, 0}, c);
    return term_list(q);
}

}  // namespace oracle

struct HPPoint {
    oracle::HPValue z;
    oracle::HPValue w;
};

/// The first n+1 points of the orbit, starting with (z, w) itself.
template <class C>
std::vector<HPPoint> highprec_orbit(const SkewProduct<C>& f, const Complex& z, const Complex& w, int n,
                                    const PrecisionConfig& cfg = {}) {
    if (n > cfg.n_max) throw DomainError("orbit length exceeds n_max");
    if (cfg.mantissa_bits < 64) throw DomainError("mantissa_bits >= 64 required");
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    const mpfr_prec_t prec = cfg.mantissa_bits;
    const oracle::TermList pt = oracle::term_list(f.p());
    const oracle::TermList qt = oracle::term_list(f.q());
    HPPoint x{oracle::HPValue(prec), oracle::HPValue(prec)};
    x.z.re = oracle::Real(prec, z.real());
    x.z.im = oracle::Real(prec, z.imag());
    x.w.re = oracle::Real(prec, w.real());
    x.w.im = oracle::Real(prec, w.imag());
    oracle::HPValue one(prec);
    one.re = oracle::Real(prec, 1.0);
    std::vector<HPPoint> orbit{x};
    for (int k = 0; k < n; ++k) {
        const HPPoint& cur = orbit.back();
        HPPoint next{oracle::evaluate(pt, cur.z, one, prec), oracle::evaluate(qt, cur.z, cur.w, prec)};
        orbit.push_back(std::move(next));
    }
    return orbit;
}

enum class OracleFunction { Gp, Gz, GzAlpha, G, Normalized, Weighted };

/// The n-th term of the defining sequence of the selected Green function.
template <class C>
double brute_green(const SkewProduct<C>& f, const Complex& z, const Complex& w, int n, OracleFunction which,
                   const PrecisionConfig& cfg = {}) {
    using oracle::Real;
    const mpfr_prec_t prec = cfg.mantissa_bits;
    const std::vector<HPPoint> orbit = highprec_orbit(f, z, w, n, cfg);
    const HPPoint& x = orbit.back();
    const Real lz = x.z.log_abs();
    const Real lw = x.w.log_abs();
    const Real zero(prec);
    auto plus = [&](const Real& v) { return v.sign() > 0 ? v : zero; };
    auto inv_pow = [&](long base, long k) {
        Real r(prec, 1.0);
        const Real b(prec, static_cast<double>(base));
        for (long i = 0; i < k; ++i) r = r / b;
        return r;
    };
    const int delta = f.delta(), d = f.d(), gamma = f.gamma();
    switch (which) {
        case OracleFunction::Gp: return (inv_pow(delta, n) * plus(lz)).to_double();
        case OracleFunction::Gz: return (inv_pow(d, n) * plus(lw)).to_double();
        case OracleFunction::GzAlpha: {
            const Real a = Real::from_rational(prec, alpha(f).value());
            if (x.w.is_zero()) return 0.0;
            return (inv_pow(d, n) * plus(lw - a * lz)).to_double();
        }
        case OracleFunction::G: {
            if (x.w.is_zero()) return -std::numeric_limits<double>::infinity();
            const Real shift = Real::from_rational(prec, Rational(static_cast<long>(n) * gamma, d));
            return (inv_pow(d, n) * (lw - shift * lz)).to_double();
        }
        case OracleFunction::Normalized: {
            if (n == 0) return plus(lw).to_double();
            Real denom(prec, static_cast<double>(n) * gamma);
            for (int i = 1; i < n; ++i) denom = denom.scaled(d);
            return (plus(lw) / denom).to_double();
        }
        case OracleFunction::Weighted: {
            const ExtendedRational a = alpha(f);
            Real lnorm = lw;
            if (a.is_finite()) {
                // log(|z|+1) = log^+|z| + log1p(exp(-|log|z||)).
                Real l1(prec);
                if (x.z.is_zero()) {
                    l1 = zero;
                } else {
                    const Real m = lz.sign() > 0 ? -lz : lz;
                    l1 = plus(lz) + Real::log1p(Real::exp(m));
                }
                const Real t = Real::from_rational(prec, a.value()) * l1;
                if (lnorm < t) lnorm = t;
            }
            return (inv_pow(f.lambda(), n) * plus(lnorm)).to_double();
        }
    }
    return 0.0;
}

/// Second component of f^n, computed by Q_{k+1} = q(p^k(z), Q_k) with its
/// own sparse arithmetic.
template <class C>
Poly2<ExactComplex> symbolic_Qzn(const SkewProduct<C>& f, int n, const ComposeOptions& opts = {}) {
    using Key = std::pair<int, int>;
    using Sparse = std::map<Key, ExactComplex>;
    auto mul = [&](const Sparse& a, const Sparse& b) {
        Sparse out;
        for (const auto& [ka, ca] : a)
            for (const auto& [kb, cb] : b) {
                ExactComplex& slot = out[{ka.first + kb.first, ka.second + kb.second}];
                slot += ca * cb;
            }
        for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
        if (out.size() > opts.term_budget) throw TermBudgetExceeded(out.size(), opts.term_budget);
        return out;
    };
    auto exact = [](const auto& c) {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, ExactComplex>) {
            return c;
        } else {
            return ExactComplex(Rational(c.real()), Rational(c.imag()));
        }
    };
    Sparse pz;
    for (const auto& [e, c] : f.p().terms()) pz[{e, 0}] = exact(c);
    Sparse Q{{{0, 1}, ExactComplex(1)}};
    Sparse P{{{1, 0}, ExactComplex(1)}};
    for (int k = 0; k < n; ++k) {
        std::vector<Sparse> Ppow{Sparse{{{0, 0}, ExactComplex(1)}}};
        std::vector<Sparse> Qpow{Sparse{{{0, 0}, ExactComplex(1)}}};
        Sparse next;
        for (const auto& [m, c] : f.q().terms()) {
            while (static_cast<int>(Ppow.size()) <= m.z) Ppow.push_back(mul(Ppow.back(), P));
            while (static_cast<int>(Qpow.size()) <= m.w) Qpow.push_back(mul(Qpow.back(), Q));
            const Sparse term = mul(Ppow[m.z], Qpow[m.w]);
            const ExactComplex cc = exact(c);
            for (const auto& [key, v] : term) next[key] += v * cc;
        }
        for (auto it = next.begin(); it != next.end();) it = it->second.is_zero() ? next.erase(it) : std::next(it);
        Q = std::move(next);
        // P <- p(P).
        Sparse np;
        Sparse pw{{{0, 0}, ExactComplex(1)}};
        int e = 0;
        for (const auto& [key, c] : pz) {
            while (e < key.first) {
                pw = mul(pw, P);
                ++e;
            }
            for (const auto& [k2, v] : pw) np[k2] += v * c;
        }
        for (auto it = np.begin(); it != np.end();) it = it->second.is_zero() ? np.erase(it) : std::next(it);
        P = std::move(np);
    }
    Poly2<ExactComplex> out;
    for (const auto& [key, c] : Q) out.add_term({key.first, key.second}, c);
    return out;
}

}  // namespace skewgreen
