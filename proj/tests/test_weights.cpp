#include <gtest/gtest.h>

#include "skewgreen/weights.hpp"
#include "test_util.hpp"

using namespace skewgreen;
using skewgreen::testing::exact_map;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST(Weights, AlphaCases) {
    EXPECT_EQ(alpha(exact_map("z^3", "z^2 w^2")), ExtendedRational(q(2)));
    EXPECT_EQ(alpha(exact_map("z^2", "z w^3")), ExtendedRational(q(-1)));
    EXPECT_EQ(alpha(exact_map("z^2", "z w^2 + z^2 w")), ExtendedRational(q(1)));
    EXPECT_EQ(alpha(exact_map("z^2", "z w^2 - z^4 + z^3")), ExtendedRational(q(3, 2)));
    EXPECT_TRUE(alpha(exact_map("z^2", "z w^2")).is_neg_infinity());
}

TEST(Weights, AlphaGammaZero) {
    EXPECT_EQ(alpha(exact_map("z^2", "w^2")), ExtendedRational(q(0)));
    EXPECT_EQ(alpha(exact_map("z^2", "w^2 + z^3")), ExtendedRational(q(3, 2)));
    EXPECT_EQ(alpha(exact_map("z^2 - 1", "w^2 + z")), ExtendedRational(q(1, 2)));
}

TEST(Weights, AlphaStringForm) {
    EXPECT_EQ(alpha(exact_map("z^2", "z w^2 - z^4 + z^3")).str(), "3/2");
    EXPECT_EQ(alpha(exact_map("z^2", "z w^2")).str(), "-inf");
    EXPECT_EQ(alpha(exact_map("z^2", "z w^3")).str(), "-1/1");
}

TEST(Weights, MonomialClosedForm) {
    for (int delta = 2; delta <= 5; ++delta)
        for (int d = 2; d <= 5; ++d)
            for (int gamma = 0; gamma <= 4; ++gamma) {
                if (delta == d) continue;
                const std::string qs = gamma ? "z^" + std::to_string(gamma) + " w^" + std::to_string(d)
                                             : "w^" + std::to_string(d);
                const auto f = exact_map("z^" + std::to_string(delta), qs);
                EXPECT_EQ(alpha(f), ExtendedRational(Rational(gamma) / (delta - d))) << delta << ' ' << d << ' ' << gamma;
            }
}

TEST(Weights, Minimality) {
    // The defining inequality fails just below alpha.
    const auto f = exact_map("z^2", "z w^2 + z^3 w + z^2");
    const Rational a = alpha(f).value();
    EXPECT_EQ(a, q(2));
    const Rational below = a - Rational(1, 2 * denominator(a).convert_to<long>());
    bool fails = false;
    for (const auto& [m, c] : f.q().terms())
        if (m.w < f.d() && Rational(m.z - f.gamma()) > below * (f.d() - m.w)) fails = true;
    EXPECT_TRUE(fails);
}

TEST(Weights, WeightOfPoly) {
    EXPECT_EQ(weight_of_poly(exact_map("z^3", "z^2 w^2").q(), q(2)), q(6));
    EXPECT_EQ(weight_of_poly(exact_map("z^2", "z w^3").q(), q(-1)), q(-2));
    EXPECT_EQ(weight_of_poly(exact_map("z^2", "w^2").q(), q(0)), q(0));
    EXPECT_THROW(weight_of_poly(exact_map("z^2", "w^2").q(), ExtendedRational::neg_infinity()), AlphaNotFinite);
}

TEST(Weights, TopPart) {
    const auto q1 = exact_map("z^3", "z^2 w^2 + z w").q();
    EXPECT_EQ(weighted_top_part(q1, q(2)), Poly2<ExactComplex>::monomial(2, 2));
    const auto q2 = exact_map("z^2", "z w^2 + z^2 w").q();
    EXPECT_EQ(weighted_top_part(q2, q(1)), q2);
    const auto q3 = exact_map("z^2", "w^2 + 5").q();
    EXPECT_EQ(weighted_top_part(q3, q(0)), q3);
}

TEST(Weights, HRestricted) {
    EXPECT_EQ(h_restricted(Poly2<ExactComplex>::monomial(2, 2)), Poly1<ExactComplex>::monomial(2));
    const auto h = h_restricted(exact_map("z^2", "z w^2 + z^2 w").q());
    EXPECT_EQ(h, Poly1<ExactComplex>::monomial(2) + Poly1<ExactComplex>::monomial(1));
}

TEST(Weights, SpecContainsDominantMonomial) {
    for (const auto& [p, qs] : std::vector<std::pair<std::string, std::string>>{
             {"z^2", "z w^3 + w^2 + w"}, {"z^2", "z w^2 + z^2 w"}, {"z^2", "w^3 + z w"}, {"z^3", "z^2 w^2 + z^5"}}) {
        const auto f = exact_map(p, qs);
        const auto spec = weight_spec(f);
        if (spec.dominant_monomial_ok) {
            EXPECT_FALSE(spec.h.coefficient({f.gamma(), f.d()}).is_zero()) << qs;
        }
    }
}

TEST(Weights, DominanceFlag) {
    EXPECT_TRUE(weight_spec(exact_map("z^3", "z^2 w^2")).dominant_monomial_ok);
    EXPECT_TRUE(weight_spec(exact_map("z^3", "z^2 w^2 + z^5")).dominant_monomial_ok);
    // alpha = 7/3 exceeds gamma/(delta - d) = 2
    EXPECT_FALSE(weight_spec(exact_map("z^3", "z^2 w^2 + z^7")).dominant_monomial_ok);
}

TEST(Weights, CaseTags) {
    EXPECT_EQ(case_tag(exact_map("z^2", "z w^2 + z^2 w")).str(), "delta=d, gamma!=0");
    EXPECT_EQ(case_tag(exact_map("z^3", "z^2 w^2")).str(), "delta>d, gamma!=0");
    EXPECT_EQ(case_tag(exact_map("z^2", "w^3")).str(), "delta<d, gamma=0");
}

TEST(Weights, WeightGrowth) {
    const auto r1 = check_weight_growth(exact_map("z^3", "z^2 w^2"), 2);
    EXPECT_TRUE(r1.match);
    EXPECT_EQ(r1.actual, q(18));
    const auto r2 = check_weight_growth(exact_map("z^2", "z w^3"), 2);
    EXPECT_TRUE(r2.match);
    EXPECT_EQ(r2.actual, q(-4));
    const auto r3 = check_weight_growth(exact_map("z^2", "z w^2 + z^2 w"), 1);
    EXPECT_TRUE(r3.match);
    EXPECT_EQ(r3.actual, q(3));
    for (int n = 1; n <= 3; ++n) {
        EXPECT_TRUE(check_weight_growth(exact_map("z^3 + z", "z^2 w^2 + z^4 w + z^5"), n).match) << n;
        EXPECT_TRUE(check_weight_growth(exact_map("z^2", "z w^2 + z^2 w"), n).match) << n;
        EXPECT_TRUE(check_weight_growth(exact_map("z^2", "w^3 + z w"), n).match) << n;
    }
}

TEST(Weights, GammaN) {
    EXPECT_EQ(gamma_n(3, 2, 2, 2), q(10));
    EXPECT_EQ(gamma_n(2, 3, 1, 2), q(5));
}
