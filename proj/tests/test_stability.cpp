#include <gtest/gtest.h>

#include "skewgreen/stability.hpp"
#include "test_util.hpp"

using namespace skewgreen;
using skewgreen::testing::exact_map;

namespace {

using P3 = Poly3<ExactComplex>;
using P1 = Poly1<ExactComplex>;

P3 mono(int z, int w, int t) {
    P3 p;
    p.add_term({z, w, t}, ExactComplex(1));
    return p;
}

}  // namespace

TEST(Stability, RegularLift) {
    const auto e = extend(exact_map("z^2", "w^2"), 1, 1);
    EXPECT_EQ(e.F[0], mono(2, 0, 0));
    EXPECT_EQ(e.F[1], mono(0, 2, 0));
    EXPECT_EQ(e.F[2], mono(0, 0, 2));
    EXPECT_EQ(e.t_cleared, 0);
    EXPECT_TRUE(weighted_homogeneous(e));
}

TEST(Stability, ClearedLift) {
    const auto e = extend(exact_map("z^2", "z w^2"), 1, 1);
    EXPECT_EQ(e.F[0], mono(2, 0, 1));
    EXPECT_EQ(e.F[1], mono(1, 2, 0));
    EXPECT_EQ(e.F[2], mono(0, 0, 3));
    EXPECT_EQ(e.t_cleared, 1);
    EXPECT_EQ(e.D, 3);
}

TEST(Stability, TopPartAtInfinity) {
    const auto e = extend(exact_map("z^3", "z^2 w^2"), 1, 2);
    EXPECT_EQ(e.F[1].at_t0(), Poly2<ExactComplex>::monomial(2, 2));
}

TEST(Stability, LiftsAreWeightedHomogeneous) {
    for (const auto& [p, q] : std::vector<std::pair<std::string, std::string>>{
             {"z^3", "z^2 w^2 + z^5"}, {"z^2", "z w^3 + w^3 + w^2"}, {"z^3 + z", "z^2 w^2 + z^4 w + z^5"},
             {"z^2 - 1", "w^2 + z"}, {"z^2", "z w^2 - z^4 + z^3"}})
        for (int r = 1; r <= 3; ++r)
            for (int s = 1; s <= 3; ++s) {
                const auto e = extend(exact_map(p, q), r, s);
                EXPECT_TRUE(weighted_homogeneous(e)) << q << " r=" << r << " s=" << s;
                // No weighted power of t divides all three components.
                EXPECT_TRUE(e.F[2].min_t() == 0 || e.F[0].min_t() < r || e.F[1].min_t() < s) << q;
            }
}

TEST(Stability, Indeterminacy) {
    const auto a = indeterminacy_on_linf(extend(exact_map("z^3", "z^2 w^2"), 1, 2));
    EXPECT_TRUE(a.p_infty);
    EXPECT_FALSE(a.one_zero_zero);
    const auto b = indeterminacy_on_linf(extend(exact_map("z^2", "z w^3"), 1, 1));
    EXPECT_TRUE(b.p_infty);
    EXPECT_TRUE(b.one_zero_zero);
    const auto c = indeterminacy_on_linf(extend(exact_map("z^2", "w^2"), 1, 1));
    EXPECT_FALSE(c.p_infty);
    EXPECT_FALSE(c.one_zero_zero);
}

TEST(Stability, Verdicts) {
    struct Row {
        const char* p;
        const char* q;
        int r, s;
        bool stable;
        LinfBehavior behavior;
    };
    const Row rows[] = {
        {"z^3", "z^2 w^2", 1, 2, true, LinfBehavior::InducedByH},
        {"z^3", "z^2 w^2", 1, 3, true, LinfBehavior::ContractsToPoint},
        {"z^3", "z^2 w^2", 1, 1, false, LinfBehavior::ContractsToIndeterminacy},
        {"z^3", "z^2 w^2 + z^5", 2, 3, false, LinfBehavior::ContractsToIndeterminacy},
        {"z^2", "w^2", 1, 1, true, LinfBehavior::InducedByH},
        {"z^2", "w^3 + z w", 2, 1, true, LinfBehavior::ContractsToPoint},
        {"z^2 - 1", "w^2 + z", 2, 1, true, LinfBehavior::InducedByH},
        {"z^2", "z w^2 + z^2 w", 1, 1, false, LinfBehavior::ContractsToIndeterminacy},
        {"z^2", "z w^3", 3, 1, false, LinfBehavior::ContractsToIndeterminacy},
        {"z^2", "z w^2", 1, 1, false, LinfBehavior::ContractsToIndeterminacy},
    };
    for (const Row& row : rows) {
        const auto f = exact_map(row.p, row.q);
        const auto v = is_algebraically_stable(f, weight_spec(f), row.r, row.s);
        EXPECT_EQ(v.algebraically_stable, row.stable) << row.q << " " << row.r << "," << row.s;
        EXPECT_EQ(v.linf_behavior, row.behavior) << row.q << " " << row.r << "," << row.s;
        EXPECT_TRUE(v.witness_consistent) << row.q;
    }
}

TEST(Stability, ContractionTargets) {
    const auto f = exact_map("z^3", "z^2 w^2");
    EXPECT_EQ(is_algebraically_stable(f, weight_spec(f), 1, 3).target, "[1:0:0]");
    const auto g = exact_map("z^2", "z w^3");
    EXPECT_EQ(is_algebraically_stable(g, weight_spec(g), 1, 1).target, "[0:1:0]");
}

TEST(Stability, InducedMap) {
    const auto f = exact_map("z^3 + z", "z^2 w^2 + z^4 w + z^5");
    const auto v = is_algebraically_stable(f, weight_spec(f), 1, 2);
    EXPECT_EQ(v.h, P1::monomial(2) + P1::monomial(1));
}

TEST(Stability, LinfModel) {
    const auto f = exact_map("z^2 - 1", "w^2 + z");
    const auto dyn = linf_dynamics(f, weight_spec(f), 2, 1);
    EXPECT_EQ(dyn.r, 2);
    EXPECT_EQ(dyn.l, 0);
    EXPECT_EQ(dyn.H, P1::monomial(1) + P1::monomial(0));
    EXPECT_EQ(dyn.model, P1::monomial(2) + P1::monomial(1, ExactComplex(2)) + P1::monomial(0));

    const auto g = exact_map("z^2", "z w^3");
    EXPECT_THROW(linf_dynamics(g, weight_spec(g), 1, 1), WrongCase);
}

TEST(Stability, RejectsBadWeights) {
    EXPECT_THROW(extend(exact_map("z^2", "w^2"), 0, 1), DomainError);
}
