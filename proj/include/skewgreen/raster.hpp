#pragma once

// Point evaluation by function name, and rasters over a w-plane or z-plane
// slice. Rows are computed in parallel; output is assembled in row order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "skewgreen/escape.hpp"
#include "skewgreen/green.hpp"

namespace skewgreen {

enum class GreenFunction { Base, Fiber, FiberRatio, Weighted, Normalized, BigG };

inline GreenFunction parse_function(const std::string& s) {
    if (s == "base") return GreenFunction::Base;
    if (s == "fiber") return GreenFunction::Fiber;
    if (s == "fiber-ratio") return GreenFunction::FiberRatio;
    if (s == "weighted") return GreenFunction::Weighted;
    if (s == "normalized") return GreenFunction::Normalized;
    if (s == "bigG") return GreenFunction::BigG;
    throw DomainError("unknown function '" + s + "'");
}

/// Evaluates one Green function of a normalized map, sharing one escape region.
class PointEvaluator {
public:
    PointEvaluator(FloatSkewProduct f, GreenFunction fn, GreenOptions opts) : f_(std::move(f)), fn_(fn), opts_(opts) {
        if (fn_ == GreenFunction::Base) return;
        const WeightSpec<Complex> spec = weight_spec(f_);
        if (spec.dominant_monomial_ok) {
            try {
                region_ = certified_region(f_, spec);
            } catch (const DominanceUnavailable&) {
            }
        }
    }

    GreenValue operator()(const Complex& z, const Complex& w) const {
        switch (fn_) {
            case GreenFunction::Base: return green_base(f_.p(), z, opts_);
            case GreenFunction::Fiber: return green_fiber(f_, region_, z, w, opts_);
            case GreenFunction::FiberRatio: return green_fiber_ratio(f_, region_, z, w, opts_);
            case GreenFunction::Weighted: return green_weighted(f_, region_, z, w, opts_);
            case GreenFunction::Normalized: return green_normalized(f_, z, w, opts_.n_max);
            case GreenFunction::BigG: return green_G(f_, region_, z, w, opts_);
        }
        throw DomainError("unknown function");
    }

    const std::optional<EscapeRegion>& region() const noexcept { return region_; }

private:
    FloatSkewProduct f_;
    GreenFunction fn_;
    GreenOptions opts_;
    std::optional<EscapeRegion> region_;
};

enum class Plane { W, Z };
enum class RasterFormat { Pgm, Csv };

struct RasterJob {
    GreenFunction function = GreenFunction::Fiber;
    /// W: w varies at z = fixed; Z: z varies at w = fixed.
    Plane plane = Plane::W;
    Complex fixed{0.0, 0.0};
    /// Pixel coordinates are divided by this before evaluation.
    Complex varying_scale{1.0, 0.0};
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
    int width = 1;
    int height = 1;
    GreenOptions opts;
    RasterFormat format = RasterFormat::Csv;
    long long pixel_budget = 16'000'000;
    unsigned threads = 0;

    void validate() const {
        if (!(x0 < x1) || !(y0 < y1)) throw DomainError("window needs x0 < x1 and y0 < y1");
        if (width < 1 || height < 1) throw DomainError("resolution must be positive");
        if (static_cast<long long>(width) * height > pixel_budget) throw DomainError("pixel budget exceeded");
    }

    /// Center of pixel (i, j); row 0 is the top (maximal imaginary part).
    Complex pixel(int i, int j) const {
        const double x = x0 + (i + 0.5) * (x1 - x0) / width;
        const double y = y1 - (j + 0.5) * (y1 - y0) / height;
        return {x, y};
    }
};

struct Raster {
    int width = 0;
    int height = 0;
    std::vector<Complex> coords;
    std::vector<GreenValue> values;
};

inline Raster compute_raster(const FloatSkewProduct& f, const RasterJob& job) {
    job.validate();
    const PointEvaluator eval(f, job.function, job.opts);
    Raster out;
    out.width = job.width;
    out.height = job.height;
    const std::size_t n = static_cast<std::size_t>(job.width) * job.height;
    out.coords.resize(n);
    out.values.resize(n);

    std::atomic<int> next_row{0};
    auto work = [&] {
        for (int j = next_row++; j < job.height; j = next_row++) {
            for (int i = 0; i < job.width; ++i) {
                const std::size_t k = static_cast<std::size_t>(j) * job.width + i;
                const Complex c = job.pixel(i, j);
                out.coords[k] = c;
                const Complex v = c / job.varying_scale;
                out.values[k] = job.plane == Plane::W ? eval(job.fixed, v) : eval(v, job.fixed);
            }
        }
    };
    unsigned threads = job.threads ? job.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(job.height));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

namespace detail {

inline std::string fmt17(double v) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Raster& r) {
    os << "re,im,value,error,status\n";
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        const GreenValue& v = r.values[k];
        os << detail::fmt17(r.coords[k].real()) << ',' << detail::fmt17(r.coords[k].imag()) << ','
           << detail::fmt17(v.as_double()) << ',' << detail::fmt17(v.is_finite() ? v.error_bound : 0.0) << ','
           << to_string(v.status) << '\n';
    }
}

/// Binary 16-bit P5; finite values map linearly min -> 0, max -> 65535,
/// +inf -> 65535, -inf and Undecided -> 0.
inline void write_pgm(std::ostream& os, const Raster& r) {
    auto shown = [](const GreenValue& v) { return v.is_finite() && v.status != GreenStatus::Undecided; };
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : r.values)
        if (shown(v)) {
            lo = std::min(lo, v.value);
            hi = std::max(hi, v.value);
        }
    if (lo > hi) lo = hi = 0;
    os << "P5\n# scale: min=" << detail::fmt17(lo) << " max=" << detail::fmt17(hi) << "\n"
       << r.width << ' ' << r.height << "\n65535\n";
    for (const auto& v : r.values) {
        std::uint16_t px = 0;
        if (v.kind == ValueKind::PosInf) {
            px = 65535;
        } else if (shown(v) && hi > lo) {
            px = static_cast<std::uint16_t>(std::lround((v.value - lo) / (hi - lo) * 65535.0));
        }
        const char bytes[2] = {static_cast<char>(px >> 8), static_cast<char>(px & 0xff)};
        os.write(bytes, 2);
    }
}

}  // namespace skewgreen
