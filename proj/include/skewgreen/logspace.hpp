#pragma once

// Orbit arithmetic that survives overflow: points switch from plain complex
// doubles to (log|x|, arg x) pairs once a magnitude leaves [1e-100, 1e100].

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "skewgreen/algebra.hpp"

namespace skewgreen {

using LReal = long double;

/// x = exp(log_abs + i arg); zero is log_abs = -inf.
struct LogComplex {
    LReal log_abs = -std::numeric_limits<LReal>::infinity();
    LReal arg = 0;

    static LogComplex from(const Complex& z) {
        if (z == Complex(0.0)) return {};
        return {std::log(static_cast<LReal>(std::abs(z))), static_cast<LReal>(std::arg(z))};
    }
    bool is_zero() const { return std::isinf(log_abs) && log_abs < 0; }
    Complex to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(static_cast<double>(std::exp(log_abs)), static_cast<double>(arg));
    }
};

inline constexpr double kLogSpaceThreshold = 1e100;

/// A coordinate of an orbit point, linear while moderate.
class OrbitCoord {
public:
    OrbitCoord() = default;
    explicit OrbitCoord(Complex z) : lin_(z), log_mode_(false) {}
    explicit OrbitCoord(LogComplex z) : lg_(z), log_mode_(true) {}

    bool log_mode() const noexcept { return log_mode_; }
    const Complex& lin() const noexcept { return lin_; }
    LogComplex as_log() const { return log_mode_ ? lg_ : LogComplex::from(lin_); }

    bool is_zero() const { return log_mode_ ? lg_.is_zero() : lin_ == Complex(0.0); }

    /// log|x|, -inf at zero.
    LReal log_abs() const {
        if (log_mode_) return lg_.log_abs;
        if (lin_ == Complex(0.0)) return -std::numeric_limits<LReal>::infinity();
        return std::log(static_cast<LReal>(std::abs(lin_)));
    }

    bool moderate() const {
        if (log_mode_) return false;
        const double a = std::abs(lin_);
        return a == 0.0 || (a >= 1.0 / kLogSpaceThreshold && a <= kLogSpaceThreshold);
    }

private:
    Complex lin_{0.0, 0.0};
    LogComplex lg_{};
    bool log_mode_ = false;
};

/// Evaluates sum c_j z^{n_j} w^{m_j} in log space by a phase-aware log-sum-exp.
inline LogComplex eval_log(const Poly2<Complex>& q, const LogComplex& z, const LogComplex& w) {
    struct Term {
        LReal log_abs;
        LReal arg;
    };
    std::vector<Term> terms;
    terms.reserve(q.size());
    LReal top = -std::numeric_limits<LReal>::infinity();
    for (const auto& [m, c] : q.terms()) {
        LReal la = std::log(static_cast<LReal>(std::abs(c)));
        LReal ar = std::arg(c);
        if (m.z > 0) {
            if (z.is_zero()) continue;
            la += m.z * z.log_abs;
            ar += m.z * z.arg;
        }
        if (m.w > 0) {
            if (w.is_zero()) continue;
            la += m.w * w.log_abs;
            ar += m.w * w.arg;
        }
        terms.push_back({la, ar});
        top = std::max(top, la);
    }
    if (terms.empty()) return {};
    std::complex<LReal> sum(0, 0);
    for (const auto& t : terms) {
        const LReal rel = t.log_abs - top;
        if (rel < -11400) continue;  // below long double resolution
        sum += std::polar(std::exp(rel), std::remainder(t.arg, 2 * static_cast<LReal>(M_PI)));
    }
    if (sum == std::complex<LReal>(0, 0)) return {};
    return {top + std::log(std::abs(sum)), std::arg(sum)};
}

inline LogComplex eval_log(const Poly1<Complex>& p, const LogComplex& z) {
    return eval_log(Poly2<Complex>::from_z(p), z, LogComplex{0, 0});
}

/// Orbit point (z_n, w_n).
struct OrbitPoint {
    OrbitCoord z;
    OrbitCoord w;
};

/// Largest |log| magnitude before an orbit is considered exhausted.
inline constexpr LReal kLogOverflow = 1e4000L;

/// One application of f in the hybrid representation. Once any coordinate
/// leaves the moderate range the point stays in log space.
class OrbitStepper {
public:
    explicit OrbitStepper(const FloatSkewProduct& f) : f_(f), p2_(Poly2<Complex>::from_z(f.p())) {}

    OrbitPoint step(const OrbitPoint& x) const {
        if (!x.z.log_mode() && !x.w.log_mode() && x.z.moderate() && x.w.moderate()) {
            const Complex z1 = f_.p()(x.z.lin());
            const Complex w1 = f_.q()(x.z.lin(), x.w.lin());
            if (std::isfinite(z1.real()) && std::isfinite(z1.imag()) && std::isfinite(w1.real()) &&
                std::isfinite(w1.imag())) {
                OrbitPoint y{OrbitCoord(z1), OrbitCoord(w1)};
                if (y.z.moderate() && y.w.moderate()) return y;
            }
        }
        const LogComplex lz = x.z.as_log();
        const LogComplex lw = x.w.as_log();
        return {OrbitCoord(eval_log(p2_, lz, LogComplex{0, 0})), OrbitCoord(eval_log(f_.q(), lz, lw))};
    }

    const FloatSkewProduct& map() const noexcept { return f_; }

private:
    FloatSkewProduct f_;
    Poly2<Complex> p2_;
};

inline bool exhausted(const OrbitPoint& x) {
    const LReal lz = x.z.log_abs();
    const LReal lw = x.w.log_abs();
    return std::fabs(lz) > kLogOverflow || (std::isfinite(lw) && std::fabs(lw) > kLogOverflow) ||
           std::isnan(lz) || std::isnan(lw);
}

/// Iterates p alone in the hybrid representation.
class BaseStepper {
public:
    explicit BaseStepper(const Poly1<Complex>& p) : p_(p), p2_(Poly2<Complex>::from_z(p)) {}

    OrbitCoord step(const OrbitCoord& z) const {
        if (z.moderate()) {
            const Complex z1 = p_(z.lin());
            if (std::isfinite(z1.real()) && std::isfinite(z1.imag())) {
                OrbitCoord y(z1);
                if (y.moderate()) return y;
            }
        }
        return OrbitCoord(eval_log(p2_, z.as_log(), LogComplex{0, 0}));
    }

private:
    Poly1<Complex> p_;
    Poly2<Complex> p2_;
};

/// log^+ t with t given by its logarithm.
inline LReal log_plus(LReal log_abs) { return log_abs > 0 ? log_abs : 0; }

}  // namespace skewgreen
