#include <gtest/gtest.h>

#include <random>

#include "skewgreen/escape.hpp"
#include "test_util.hpp"

using namespace skewgreen;
using skewgreen::testing::float_map;

TEST(Escape, BaseRadius) {
    const BaseEscape a = base_escape_radius(float_map("z^2", "w^2").p());
    EXPECT_GE(a.R_p, 2);
    EXPECT_EQ(a.eps_p, 0);
    const BaseEscape b = base_escape_radius(float_map("z^2 - 1", "w^2").p());
    EXPECT_EQ(b.R_p, 2);
    EXPECT_DOUBLE_EQ(b.eps_p, 0.25);
    const BaseEscape c = base_escape_radius(float_map("z^3 + z", "w^2").p());
    EXPECT_EQ(c.R_p, 2);
    EXPECT_DOUBLE_EQ(c.eps_p, 0.25);
}

TEST(Escape, MonomialRegionIsExact) {
    const EscapeRegion reg = certified_region(float_map("z^3", "z^2 w^2"));
    EXPECT_EQ(reg.kind, RegionKind::GammaNonzero);
    EXPECT_EQ(reg.S, 0);
    EXPECT_EQ(reg.r1, 1);
    EXPECT_EQ(reg.r2, 1);
}

TEST(Escape, CoefficientMass) {
    const EscapeRegion a = certified_region(float_map("z^2", "z w^3 + w"));
    EXPECT_LE(a.S, 0.25);
    EXPECT_LE(a.R, 4);
    const EscapeRegion b = certified_region(float_map("z^2", "z w^2 + z^2 w"));
    EXPECT_LE(b.S, 0.25);
    EXPECT_LE(b.R, 4);
    EXPECT_TRUE(b.r1 < 1 && 1 < b.r2);
}

TEST(Escape, RegionKinds) {
    EXPECT_EQ(certified_region(float_map("z^2 - 1", "w^2 + z")).kind, RegionKind::Nondegenerate);
    EXPECT_EQ(certified_region(float_map("z^2", "z w^2")).kind, RegionKind::FiberFree);
    EXPECT_EQ(certified_region(float_map("z^2", "z w^3")).kind, RegionKind::GammaNonzero);
}

TEST(Escape, DominanceUnavailable) {
    EXPECT_THROW(certified_region(float_map("z^3", "z^2 w^2 + z^7")), DominanceUnavailable);
}

TEST(Escape, Membership) {
    EscapeRegion reg;
    reg.R = 10;
    reg.alpha = 2;
    reg.alpha_used = Rational(2);
    reg.kind = RegionKind::GammaNonzero;
    EXPECT_TRUE(in_region(reg, Complex(100), Complex(1e6)));
    EXPECT_FALSE(in_region(reg, Complex(100), Complex(1e4)));
    reg.kind = RegionKind::FiberFree;
    EXPECT_FALSE(in_region(reg, Complex(11), Complex(0)));
    EXPECT_TRUE(in_region(reg, Complex(11), Complex(1e-9)));
}

TEST(Escape, Classify) {
    const auto f = float_map("z^3", "z^2 w^2");
    const EscapeRegion reg = certified_region(f);
    const OrbitClass a = classify_orbit(f, reg, Complex(2), Complex(16), 50);
    EXPECT_EQ(a.status, OrbitStatus::EntersWR);
    EXPECT_EQ(a.base_status, BaseStatus::BaseEscapes);
    // |w / z^2| squares each step from 1/2, so the orbit stays outside W_R.
    const OrbitClass a2 = classify_orbit(f, reg, Complex(2), Complex(2), 50);
    EXPECT_EQ(a2.status, OrbitStatus::Undecided);

    const auto g = float_map("z^2", "z w^3");
    const OrbitClass b = classify_orbit(g, certified_region(g), Complex(0.5), Complex(0.5), 100);
    EXPECT_EQ(b.status, OrbitStatus::BaseBounded);

    const auto h = float_map("z^2", "z w^2");
    const OrbitClass c = classify_orbit(h, certified_region(h), Complex(2), Complex(0), 100);
    EXPECT_EQ(c.status, OrbitStatus::Undecided);
    EXPECT_EQ(c.base_status, BaseStatus::BaseEscapes);
    EXPECT_TRUE(c.zero_fiber);
    const OrbitClass d = classify_orbit(h, certified_region(h), Complex(0.5), Complex(0), 100);
    EXPECT_EQ(d.status, OrbitStatus::BaseBounded);
}

TEST(Escape, MonotoneCertification) {
    const auto f = float_map("z^2", "z w^2 + z^2 w");
    const EscapeRegion reg = certified_region(f);
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 300; ++i) {
        const Complex z(u(g), u(g)), w(u(g), u(g));
        const OrbitClass a = classify_orbit(f, reg, z, w, 20);
        if (a.status != OrbitStatus::EntersWR) continue;
        const OrbitClass b = classify_orbit(f, reg, z, w, 200);
        EXPECT_EQ(b.status, OrbitStatus::EntersWR);
        EXPECT_EQ(b.n, a.n);
    }
}

TEST(Escape, MonomialEntersImmediately) {
    const auto f = float_map("z^2", "z w^3");
    const EscapeRegion reg = certified_region(f);
    const Complex z(reg.R * 1.5, 0);
    const Complex w(reg.R * std::pow(std::abs(z), static_cast<double>(reg.alpha)) * 1.01, 0);
    EXPECT_EQ(classify_orbit(f, reg, z, w, 5).n, 0);
}

TEST(Escape, DegenerateFiberNeverEnters) {
    // q_3 vanishes identically and q(z, 0) = 0, so the fiber over z = 3 collapses to {w = 0}.
    const auto f = float_map("z^2", "z w^2 + z w - 3 w^2 - 3 w");
    const EscapeRegion reg = certified_region(f);
    for (const Complex w : {Complex(0.5), Complex(1e3), Complex(-2, 7)}) {
        const OrbitClass c = classify_orbit(f, reg, Complex(3), w, 500);
        EXPECT_NE(c.status, OrbitStatus::EntersWR);
        EXPECT_TRUE(c.zero_fiber);
    }
}

namespace {

/// Samples (z, w) in W_R with log-margins up to `spread`.
std::pair<Complex, Complex> sample(std::mt19937_64& g, const EscapeRegion& reg) {
    std::uniform_real_distribution<double> u(0.01, 3), th(0, 6.283185307179586);
    const double lR = std::log(reg.R);
    const double lz = lR + u(g);
    double lw = lR + static_cast<double>(reg.alpha) * lz + u(g);
    if (reg.kind == RegionKind::Nondegenerate) lw = std::max(lw, (static_cast<double>(reg.alpha) + 1) * lR + u(g));
    return {std::polar(std::exp(lz), th(g)), std::polar(std::exp(lw), th(g))};
}

}  // namespace

TEST(Escape, InvarianceAndDominance) {
    const std::vector<std::pair<std::string, std::string>> maps{
        {"z^3", "z^2 w^2 + z^5"}, {"z^2", "z w^3 + w^3 + w^2"}, {"z^2", "z w^2 + z^2 w"},
        {"z^2", "z w^3 + w"},     {"z^3 + z", "z^2 w^2 + z^4 w + z^5"}, {"z^2 - 1", "w^2 + z"}};
    std::mt19937_64 g(11);
    for (const auto& [p, qs] : maps) {
        const auto f = float_map(p, qs);
        const EscapeRegion reg = certified_region(f);
        const double a = static_cast<double>(reg.alpha);
        int bad_inv = 0, bad_dom = 0;
        for (int i = 0; i < 10000; ++i) {
            const auto [z, w] = sample(g, reg);
            ASSERT_TRUE(in_region(reg, z, w));
            const auto [z1, w1] = apply(f, z, w);
            if (!in_region(reg, z1, w1)) ++bad_inv;
            if (reg.kind != RegionKind::GammaNonzero) continue;
            double ratio;
            if (f.delta() > f.d()) {
                ratio = std::abs(w1) / std::pow(std::abs(z1), a) / std::pow(std::abs(w) / std::pow(std::abs(z), a), f.d());
            } else {
                ratio = std::abs(w1) / (std::pow(std::abs(z), f.gamma()) * std::pow(std::abs(w), f.d()));
            }
            if (!(reg.r1 < ratio && ratio < reg.r2)) ++bad_dom;
        }
        EXPECT_EQ(bad_inv, 0) << qs;
        EXPECT_EQ(bad_dom, 0) << qs;
    }
}
