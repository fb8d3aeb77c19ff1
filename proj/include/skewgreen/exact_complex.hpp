#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include "skewgreen/rational.hpp"

namespace skewgreen {

/// Complex number with exact rational components.
class ExactComplex {
public:
    ExactComplex() = default;
    ExactComplex(Rational re) : re_(std::move(re)) {}
    ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    ExactComplex(long v) : re_(v) {}

    const Rational& real() const noexcept { return re_; }
    const Rational& imag() const noexcept { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

    ExactComplex& operator+=(const ExactComplex& o) {
        re_ += o.re_;
        if (o.im_ != 0) im_ += o.im_;
        return *this;
    }
    ExactComplex& operator-=(const ExactComplex& o) {
        re_ -= o.re_;
        if (o.im_ != 0) im_ -= o.im_;
        return *this;
    }
    ExactComplex& operator*=(const ExactComplex& o) {
        if (im_ == 0 && o.im_ == 0) {
            re_ *= o.re_;
            return *this;
        }
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    friend ExactComplex operator-(const ExactComplex& a) { return ExactComplex(-a.re_, -a.im_); }

    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactComplex& c) {
        return os << "(" << to_string(c.re_) << "," << to_string(c.im_) << ")";
    }

private:
    Rational re_{0};
    Rational im_{0};
};

using Complex = std::complex<double>;

/// Coefficient-field operations shared by exact and floating polynomials.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<ExactComplex> {
    static constexpr bool exact = true;
    static bool is_zero(const ExactComplex& c) { return c.is_zero(); }
    static Complex to_complex(const ExactComplex& c) { return c.to_complex(); }
    static ExactComplex one() { return ExactComplex(1); }
};

template <>
struct CoeffTraits<Complex> {
    static constexpr bool exact = false;
    /// Only coefficients at underflow scale are pruned.
    static constexpr double prune_threshold = 1e-300;
    static bool is_zero(const Complex& c) { return std::abs(c) < prune_threshold; }
    static Complex to_complex(const Complex& c) { return c; }
    static Complex one() { return Complex(1.0, 0.0); }
};

}  // namespace skewgreen
