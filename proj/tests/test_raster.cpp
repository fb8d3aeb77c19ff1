#include <gtest/gtest.h>

#include <sstream>

#include "skewgreen/raster.hpp"
#include "test_util.hpp"

using namespace skewgreen;
using skewgreen::testing::float_map;

namespace {

RasterJob job(GreenFunction fn, int w, int h) {
    RasterJob j;
    j.function = fn;
    j.fixed = Complex(2, 0.5);
    j.x0 = -3;
    j.x1 = 3;
    j.y0 = -2;
    j.y1 = 2;
    j.width = w;
    j.height = h;
    j.opts.tol = 1e-9;
    return j;
}

}  // namespace

TEST(Raster, ParseFunction) {
    EXPECT_EQ(parse_function("fiber-ratio"), GreenFunction::FiberRatio);
    EXPECT_EQ(parse_function("bigG"), GreenFunction::BigG);
    EXPECT_THROW(parse_function("nope"), DomainError);
}

TEST(Raster, PixelCenters) {
    RasterJob j = job(GreenFunction::Fiber, 2, 2);
    j.x0 = 1;
    j.x1 = 3;
    j.y0 = 1;
    j.y1 = 3;
    EXPECT_EQ(j.pixel(0, 0), Complex(1.5, 2.5));
    EXPECT_EQ(j.pixel(1, 1), Complex(2.5, 1.5));
}

TEST(Raster, SinglePixelMatchesPointEvaluation) {
    const auto f = float_map("z^2", "z w^3 + w^3 + w^2");
    RasterJob j = job(GreenFunction::Fiber, 1, 1);
    const Raster r = compute_raster(f, j);
    const PointEvaluator eval(f, GreenFunction::Fiber, j.opts);
    const GreenValue v = eval(j.fixed, j.pixel(0, 0));
    EXPECT_EQ(r.values[0].value, v.value);
    EXPECT_EQ(r.values[0].status, v.status);
}

TEST(Raster, ZPlane) {
    const auto f = float_map("z^2", "z w^3");
    RasterJob j = job(GreenFunction::Base, 3, 3);
    j.plane = Plane::Z;
    const Raster r = compute_raster(f, j);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        EXPECT_EQ(r.values[k].value, green_base(f.p(), r.coords[k], j.opts).value);
}

TEST(Raster, ThreadCountDoesNotChangeResults) {
    const auto f = float_map("z^2", "z w^2 + z^2 w");
    RasterJob one = job(GreenFunction::BigG, 17, 13);
    one.threads = 1;
    RasterJob many = one;
    many.threads = 6;
    const Raster a = compute_raster(f, one);
    const Raster b = compute_raster(f, many);
    ASSERT_EQ(a.values.size(), b.values.size());
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        EXPECT_EQ(a.values[k].kind, b.values[k].kind);
        EXPECT_EQ(a.values[k].value, b.values[k].value);
        EXPECT_EQ(a.values[k].error_bound, b.values[k].error_bound);
        EXPECT_EQ(a.values[k].status, b.values[k].status);
    }
    std::ostringstream sa, sb;
    write_pgm(sa, a);
    write_pgm(sb, b);
    EXPECT_EQ(sa.str(), sb.str());
}

TEST(Raster, Validation) {
    const auto f = float_map("z^2", "z w^3");
    RasterJob j = job(GreenFunction::Fiber, 5000, 5000);
    j.pixel_budget = 1000;
    EXPECT_THROW(compute_raster(f, j), DomainError);
    RasterJob k = job(GreenFunction::Fiber, 2, 2);
    k.x1 = k.x0;
    EXPECT_THROW(compute_raster(f, k), DomainError);
    RasterJob m = job(GreenFunction::Fiber, 0, 2);
    EXPECT_THROW(compute_raster(f, m), DomainError);
}

TEST(Raster, CsvFormat) {
    const auto f = float_map("z^2", "z w^2");
    RasterJob j = job(GreenFunction::BigG, 2, 1);
    j.x0 = -1;
    j.x1 = 1;
    j.y0 = -1;
    j.y1 = 1;
    j.fixed = Complex(2);
    const Raster r = compute_raster(f, j);
    std::ostringstream os;
    write_csv(os, r);
    const std::string s = os.str();
    EXPECT_EQ(s.rfind("re,im,value,error,status\n-0.5,0,", 0), 0u) << s;
    EXPECT_NE(s.find("Certified"), std::string::npos);
}

TEST(Raster, PgmHeaderAndSize) {
    const auto f = float_map("z^2", "z w^3");
    const Raster r = compute_raster(f, job(GreenFunction::Fiber, 4, 3));
    std::ostringstream os;
    write_pgm(os, r);
    const std::string s = os.str();
    ASSERT_EQ(s.rfind("P5\n# scale: min=", 0), 0u);
    const auto hdr = s.find("4 3\n65535\n");
    ASSERT_NE(hdr, std::string::npos);
    EXPECT_EQ(s.size() - (hdr + 10), 4u * 3u * 2u);
}
