#include <gtest/gtest.h>

#include <random>

#include "skewgreen/algebra.hpp"
#include "test_util.hpp"

using namespace skewgreen;
using skewgreen::testing::exact_map;
using skewgreen::testing::float_map;

TEST(Algebra, EvalPoly1) {
    EXPECT_EQ(eval_poly1(float_map("z^2", "w^2").p(), Complex(3)), Complex(9));
    EXPECT_EQ(eval_poly1(float_map("z^2 - 1", "w^2").p(), Complex(0)), Complex(-1));
    EXPECT_EQ(eval_poly1(float_map("z^3 + 1/2 z", "w^2").p(), Complex(2)), Complex(9));
}

TEST(Algebra, EvalPoly2) {
    EXPECT_EQ(eval_poly2(float_map("z^2", "z w^2").q(), Complex(2), Complex(3)), Complex(18));
    EXPECT_EQ(eval_poly2(float_map("z^2", "z^2 w^2 + 1").q(), Complex(0), Complex(5)), Complex(1));
    EXPECT_EQ(eval_poly2(float_map("z^2", "z w^3 + z^2 w").q(), Complex(1), Complex(2)), Complex(10));
}

TEST(Algebra, Apply) {
    EXPECT_EQ(apply(float_map("z^2", "z w^2"), Complex(2), Complex(1)), std::make_pair(Complex(4), Complex(2)));
    EXPECT_EQ(apply(float_map("z^2", "z w^3"), Complex(1), Complex(1)), std::make_pair(Complex(1), Complex(1)));
    EXPECT_EQ(apply(float_map("z^3", "z^2 w^2"), Complex(2), Complex(2)), std::make_pair(Complex(8), Complex(16)));
}

TEST(Algebra, ComposeMonomials) {
    const auto f = exact_map("z^2", "z w^2");
    const auto ff = compose_skew(f, f);
    EXPECT_EQ(ff.p(), Poly1<ExactComplex>::monomial(4));
    EXPECT_EQ(ff.q(), Poly2<ExactComplex>::monomial(4, 4));

    const auto g = exact_map("z^2", "z w^3");
    const auto gg = compose_skew(g, g);
    EXPECT_EQ(gg.q(), Poly2<ExactComplex>::monomial(5, 9));
}

TEST(Algebra, IterateFiberDegree) {
    const auto f = exact_map("z^2 + 1", "w^3 + z w");
    EXPECT_EQ(iterate_skew(f, 3).d(), 27);
    EXPECT_EQ(compose_skew(f, f).q().deg_w(), 9);
}

TEST(Algebra, ComposeMatchesDoubleApply) {
    const auto fe = exact_map("z^2 - 1/3 z", "z w^2 + 2 w + (1/2+1i) z^2");
    const auto ff = compose_skew(fe, fe).to_floating();
    const auto f = fe.to_floating();
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 200; ++i) {
        const Complex z(u(g), u(g)), w(u(g), u(g));
        const auto [z1, w1] = apply(f, z, w);
        const auto [z2, w2] = apply(f, z1, w1);
        const auto [a, b] = apply(ff, z, w);
        EXPECT_LE(std::abs(a - z2), 1e-12 * (1 + std::abs(z2)));
        EXPECT_LE(std::abs(b - w2), 1e-12 * (1 + std::abs(w2)));
    }
}

TEST(Algebra, ExactCancellationIsExact) {
    const auto f = exact_map("z^2", "w^2 + 1/3 w");
    const auto g = exact_map("z^2", "w^2 - 1/3 w");
    // (w^2 - w/3)^2 + (w^2 - w/3)/3 = w^4 - 2/3 w^3 + 4/9 w^2 - 1/9 w
    const auto fg = compose_skew(f, g);
    EXPECT_EQ(fg.q().coefficient({0, 1}), ExactComplex(Rational(-1, 9)));
    EXPECT_EQ(fg.q().coefficient({0, 2}), ExactComplex(Rational(1, 9) + Rational(1, 3)));
    EXPECT_EQ(fg.q().coefficient({0, 3}), ExactComplex(Rational(-2, 3)));
}

TEST(Algebra, TermBudget) {
    const auto f = exact_map("z^2 + z", "w^2 + z w + z");
    ComposeOptions opts;
    opts.term_budget = 10;
    EXPECT_THROW(iterate_skew(f, 4, opts), TermBudgetExceeded);
}

TEST(Algebra, RejectsLowDegrees) {
    EXPECT_THROW(exact_map("z", "w^2"), DomainError);
    EXPECT_THROW(exact_map("z^2", "z w"), DomainError);
}

TEST(Algebra, NormalizeMonicIdentity) {
    const Normalized n = normalize_monic(exact_map("z^2", "z w^2"));
    EXPECT_EQ(n.s, Complex(1));
    EXPECT_EQ(n.t, Complex(1));
}

TEST(Algebra, NormalizeMonicScaling) {
    const Normalized n = normalize_monic(exact_map("4 z^2", "z w^2"));
    EXPECT_NEAR(std::abs(n.s - Complex(0.25)), 0, 1e-15);
    EXPECT_NEAR(std::abs(n.map.p().leading() - Complex(1)), 0, 1e-14);
    EXPECT_NEAR(std::abs(n.map.b().leading() - Complex(1)), 0, 1e-14);

    const Normalized m = normalize_monic(exact_map("z^2", "2 z w^3"));
    EXPECT_NEAR(std::abs(m.t * m.t - Complex(0.5)), 0, 1e-15);
    EXPECT_NEAR(std::abs(m.map.b().leading() - Complex(1)), 0, 1e-14);
}

TEST(Algebra, NormalizeMonicConjugates) {
    const auto fe = exact_map("(2-1i) z^3 + z", "(1/2+1i) z w^2 + 3 w + z^2");
    const auto f = fe.to_floating();
    const Normalized n = normalize_monic(fe);
    EXPECT_NEAR(std::abs(n.map.p().leading() - Complex(1)), 0, 1e-14);
    EXPECT_NEAR(std::abs(n.map.b().leading() - Complex(1)), 0, 1e-14);
    const Complex z(0.3, -0.7), w(1.1, 0.4);
    // sigma o g = f o sigma with sigma(z, w) = (s z, t w)
    const auto [gz, gw] = apply(n.map, z, w);
    const auto [fz, fw] = apply(f, n.s * z, n.t * w);
    EXPECT_NEAR(std::abs(n.s * gz - fz), 0, 1e-13);
    EXPECT_NEAR(std::abs(n.t * gw - fw), 0, 1e-13);
}
