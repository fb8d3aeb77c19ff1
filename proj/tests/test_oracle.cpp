#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "skewgreen/oracle.hpp"
#include "test_util.hpp"

using namespace skewgreen;
using skewgreen::testing::exact_map;

TEST(Oracle, ShortOrbit) {
    const auto orbit = highprec_orbit(exact_map("z^2", "z w^2"), Complex(2), Complex(1), 2);
    ASSERT_EQ(orbit.size(), 3u);
    EXPECT_EQ(orbit[1].z.to_complex(), Complex(4));
    EXPECT_EQ(orbit[1].w.to_complex(), Complex(2));
    EXPECT_EQ(orbit[2].z.to_complex(), Complex(16));
    EXPECT_EQ(orbit[2].w.to_complex(), Complex(16));
}

TEST(Oracle, FixedPoint) {
    const auto orbit = highprec_orbit(exact_map("z^2", "z w^3"), Complex(1), Complex(1), 10);
    for (const auto& x : orbit) {
        EXPECT_EQ(x.z.to_complex(), Complex(1));
        EXPECT_EQ(x.w.to_complex(), Complex(1));
    }
}

TEST(Oracle, MonomialExponentsPastOverflow) {
    // (z^2, z w^3) from (2, 3): log|w_n| = 3^n log 3 + (3^n - 2^n) log 2.
    const auto orbit = highprec_orbit(exact_map("z^2", "z w^3"), Complex(2), Complex(3), 60);
    const auto& x = orbit.back();
    EXPECT_TRUE(x.w.log_form);
    const double lw = x.w.log_abs().to_double();
    const double expect = std::pow(3.0, 60) * std::log(3.0) + (std::pow(3.0, 60) - std::pow(2.0, 60)) * std::numbers::ln2;
    EXPECT_NEAR(lw / expect, 1.0, 1e-14);
    EXPECT_NEAR(x.z.log_abs().to_double(), std::pow(2.0, 60) * std::numbers::ln2, 1e-14 * std::pow(2.0, 60));
}

TEST(Oracle, BruteGreenFiber) {
    // d^{-n} log|w_n| = log 6 - (2/3)^n log 2 at (2, 3).
    const auto f = exact_map("z^2", "z w^3");
    const double v6 = brute_green(f, Complex(2), Complex(3), 6, OracleFunction::Gz);
    EXPECT_NEAR(v6, std::log(6.0) - std::pow(2.0 / 3.0, 6) * std::numbers::ln2, 1e-15);
    EXPECT_NEAR(brute_green(f, Complex(2), Complex(3), 40, OracleFunction::Gz), std::log(6.0), 1e-6);
}

TEST(Oracle, BruteGreenBaseInKp) {
    const auto f = exact_map("z^2 - 1", "w^2");
    for (int n : {1, 5, 30}) EXPECT_EQ(brute_green(f, Complex(0), Complex(1), n, OracleFunction::Gp), 0.0);
}

TEST(Oracle, BruteGreenG) {
    const auto f = exact_map("z^2", "z w^2");
    for (int n : {1, 4, 20}) EXPECT_NEAR(brute_green(f, Complex(2), Complex(5), n, OracleFunction::G), std::log(5.0), 1e-14);
    EXPECT_EQ(brute_green(f, Complex(2), Complex(0), 3, OracleFunction::G), -std::numeric_limits<double>::infinity());
}

TEST(Oracle, BruteGreenNormalized) {
    const double v = brute_green(exact_map("z^2", "z w^2"), Complex(2), Complex(3), 100, OracleFunction::Normalized);
    EXPECT_NEAR(v, 0.7151194263333075, 1e-13);
}

TEST(Oracle, PrecisionIndependence) {
    using oracle::Real;
    const auto f = exact_map("z^2 - 1/3", "z w^3 + (1/2+1/4i) w + z");
    PrecisionConfig lo, hi;
    lo.mantissa_bits = 256;
    hi.mantissa_bits = 512;
    for (const Complex& w : {Complex(0.7, 0.2), Complex(-1.1, 0.5), Complex(0.3, -0.9)}) {
        const auto a = highprec_orbit(f, Complex(1.3, 0.4), w, 8, lo);
        const auto b = highprec_orbit(f, Complex(1.3, 0.4), w, 8, hi);
        for (std::size_t k = 0; k < a.size(); ++k) {
            Real wide(512);
            mpfr_set(wide.get(), a[k].w.log_abs().get(), MPFR_RNDN);
            const Real diff = b[k].w.log_abs() - wide;
            // Scaled as brute_green scales it.
            EXPECT_LT(std::fabs(diff.to_double()) / std::pow(3.0, static_cast<double>(k)), 1e-30) << k;
        }
    }
}

TEST(Oracle, SymbolicMonomials) {
    EXPECT_EQ(symbolic_Qzn(exact_map("z^2", "z w^3"), 2), Poly2<ExactComplex>::monomial(5, 9));
    EXPECT_EQ(symbolic_Qzn(exact_map("z^3", "z^2 w^2"), 2), Poly2<ExactComplex>::monomial(10, 4));
}

TEST(Oracle, SymbolicAgreesWithComposition) {
    const auto f = exact_map("z^2 + 1/2 z", "z w^2 + (1-2i) w + z^2");
    for (int n = 1; n <= 3; ++n) EXPECT_EQ(symbolic_Qzn(f, n), iterate_skew(f, n).q()) << n;
}

TEST(Oracle, WeightedTopPartOfSecondIterate) {
    // Weight-18 part of Q^2 equals z^18 (h o h)(w / z^2), h(c) = c^2 + c.
    const auto f = exact_map("z^3 + z", "z^2 w^2 + z^4 w + z^5");
    const auto top = weighted_top_part(symbolic_Qzn(f, 2), Rational(2));
    Poly2<ExactComplex> expect;
    expect.add_term({10, 4}, ExactComplex(1));
    expect.add_term({12, 3}, ExactComplex(2));
    expect.add_term({14, 2}, ExactComplex(2));
    expect.add_term({16, 1}, ExactComplex(1));
    EXPECT_EQ(top, expect);
}

TEST(Oracle, SymbolicBudget) {
    ComposeOptions opts;
    opts.term_budget = 5;
    EXPECT_THROW(symbolic_Qzn(exact_map("z^2 + z", "w^2 + z w + 1"), 3, opts), TermBudgetExceeded);
}

TEST(Oracle, RejectsLowPrecision) {
    PrecisionConfig cfg;
    cfg.mantissa_bits = 32;
    EXPECT_THROW(highprec_orbit(exact_map("z^2", "w^2"), Complex(1), Complex(1), 2, cfg), DomainError);
}
