#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <limits>
#include <optional>
#include <string>

#include "skewgreen/error.hpp"

namespace skewgreen {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline std::string to_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// A rational number or -inf. Only the weight of maps with q = b(z) w^d and
/// delta = d takes the value -inf.
class ExtendedRational {
public:
    ExtendedRational() = default;
    ExtendedRational(Rational v) : value_(std::move(v)) {}
    ExtendedRational(long v) : value_(Rational(v)) {}

    static ExtendedRational neg_infinity() { return ExtendedRational(Tag{}); }

    bool is_neg_infinity() const noexcept { return !value_.has_value(); }
    bool is_finite() const noexcept { return value_.has_value(); }

    const Rational& value() const {
        if (!value_) throw AlphaNotFinite();
        return *value_;
    }

    double to_double() const {
        return value_ ? skewgreen::to_double(*value_) : -std::numeric_limits<double>::infinity();
    }

    /// "num/den" or "-inf".
    std::string str() const { return value_ ? to_string(*value_) : "-inf"; }

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        return a.value_ == b.value_;
    }
    friend std::partial_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
        if (!a.value_ && !b.value_) return std::partial_ordering::equivalent;
        if (!a.value_) return std::partial_ordering::less;
        if (!b.value_) return std::partial_ordering::greater;
        if (*a.value_ < *b.value_) return std::partial_ordering::less;
        if (*a.value_ > *b.value_) return std::partial_ordering::greater;
        return std::partial_ordering::equivalent;
    }

private:
    struct Tag {};
    explicit ExtendedRational(Tag) {}
    std::optional<Rational> value_;
};

}  // namespace skewgreen
