#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "skewgreen/skewgreen.hpp"
#include "skewgreen/verify.hpp"

using namespace skewgreen;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitVerify = 3;

MapFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read map file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_map(buf.str());
}

std::vector<double> numbers(const std::string& s, std::size_t want, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "'" + item + "' is not a number");
        }
    }
    if (out.size() != want)
        throw CLI::ValidationError(what, "expected " + std::to_string(want) + " comma-separated numbers");
    return out;
}

/// Positive integer from the environment, or fallback when unset.
long long env_int(const char* name, long long fallback) {
    const char* env = std::getenv(name);
    if (!env) return fallback;
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) throw DomainError(std::string(name) + " must be a positive integer");
    return v;
}

ComposeOptions compose_options() {
    ComposeOptions c;
    c.term_budget = static_cast<std::size_t>(env_int("SKEWGREEN_TERM_BUDGET", static_cast<long long>(c.term_budget)));
    return c;
}

PrecisionConfig oracle_config() {
    PrecisionConfig p;
    p.mantissa_bits = static_cast<int>(env_int("SKEWGREEN_ORACLE_BITS", p.mantissa_bits));
    return p;
}

/// Original coordinates to those of the monic conjugate.
std::pair<Complex, Complex> to_normalized(const MapFile& mf, const Complex& z, const Complex& w) {
    return {z / mf.normalized.s, w / mf.normalized.t};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green functions of polynomial skew products"};
    app.require_subcommand(1);

    std::string map_path;
    std::string point = "0,0,0,0";
    std::string function = "fiber";
    double tol = 1e-9;
    int n_max = 10000;

    auto* alpha_cmd = app.add_subcommand("alpha", "weight alpha, case and weighted top part");
    alpha_cmd->add_option("map", map_path, "map file")->required();

    auto* classify_cmd = app.add_subcommand("classify", "orbit classification relative to W_R");
    classify_cmd->add_option("map", map_path, "map file")->required();
    classify_cmd->add_option("--point", point, "re_z,im_z,re_w,im_w")->required();
    classify_cmd->add_option("--n-max", n_max, "iteration budget");

    auto* green_cmd = app.add_subcommand("green", "evaluate a Green function at a point");
    green_cmd->add_option("map", map_path, "map file")->required();
    green_cmd->add_option("--point", point, "re_z,im_z,re_w,im_w")->required();
    green_cmd->add_option("--function", function, "base | fiber | fiber-ratio | weighted | normalized | bigG");
    green_cmd->add_option("--tol", tol, "target error bound");
    green_cmd->add_option("--n-max", n_max, "iteration budget (the index n for normalized)");

    std::string plane = "w", fixed = "0,0", window = "-2,2,-2,2", size = "64x64", format = "pgm", out_path;
    unsigned threads = 0;
    long long pixel_budget = 16'000'000;
    auto* raster_cmd = app.add_subcommand("raster", "evaluate a Green function over a slice");
    raster_cmd->add_option("map", map_path, "map file")->required();
    raster_cmd->add_option("--function", function, "base | fiber | fiber-ratio | weighted | normalized | bigG");
    raster_cmd->add_option("--plane", plane, "w: w varies at z = fixed; z: z varies at w = fixed")
        ->check(CLI::IsMember({"w", "z"}));
    raster_cmd->add_option("--fixed", fixed, "re,im of the fixed coordinate");
    raster_cmd->add_option("--window", window, "x0,x1,y0,y1");
    raster_cmd->add_option("--size", size, "WIDTHxHEIGHT");
    raster_cmd->add_option("--format", format, "pgm | csv")->check(CLI::IsMember({"pgm", "csv"}));
    raster_cmd->add_option("-o,--out", out_path, "output file (default stdout)");
    raster_cmd->add_option("--tol", tol, "target error bound");
    raster_cmd->add_option("--n-max", n_max, "iteration budget");
    raster_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    raster_cmd->add_option("--pixel-budget", pixel_budget, "maximum width * height");

    int deg_n = 5;
    auto* degrees_cmd = app.add_subcommand("degrees", "deg(f^n) against the growth bounds");
    degrees_cmd->add_option("map", map_path, "map file")->required();
    degrees_cmd->add_option("--n-max", deg_n, "largest n")->check(CLI::Range(1, 64));

    int r_weight = 1, s_weight = 1;
    auto* stability_cmd = app.add_subcommand("stability", "extension to P(r,s,1) and algebraic stability");
    stability_cmd->add_option("map", map_path, "map file")->required();
    stability_cmd->add_option("--r", r_weight, "weight of z")->check(CLI::PositiveNumber);
    stability_cmd->add_option("--s", s_weight, "weight of w")->check(CLI::PositiveNumber);

    double verify_scale = 0.2;
    auto* verify_cmd = app.add_subcommand("verify", "run the self-verification suite");
    verify_cmd->add_option("--scale", verify_scale, "sample-count multiplier (1 = full)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*alpha_cmd) {
            const MapFile mf = load(map_path);
            const WeightSpec<ExactComplex> spec = weight_spec(mf.map);
            std::cout << "alpha = " << spec.alpha.str() << " (case: " << spec.tag.str() << ")\n";
            std::cout << "h = " << format_poly(spec.h) << "\n";
            std::cout << "delta = " << mf.map.delta() << ", d = " << mf.map.d() << ", gamma = " << mf.map.gamma()
                      << "\n";
            return 0;
        }

        if (*classify_cmd) {
            const MapFile mf = load(map_path);
            const auto v = numbers(point, 4, "--point");
            const auto [z, w] = to_normalized(mf, {v[0], v[1]}, {v[2], v[3]});
            const EscapeRegion reg = certified_region(mf.normalized.map);
            const OrbitClass oc = classify_orbit(mf.normalized.map, reg, z, w, n_max);
            std::printf("region: %s, R = %.17g, r1 = %.6g, r2 = %.6g\n", to_string(reg.kind), reg.R, reg.r1, reg.r2);
            std::printf("status = %s(n=%d)\n", to_string(oc.status), oc.n);
            if (oc.base_status == BaseStatus::BaseEscapes)
                std::printf("base: BaseEscapes(step=%d)\n", oc.base_escape_step);
            else
                std::printf("base: BaseBoundedSoFar\n");
            if (oc.zero_fiber) std::printf("orbit reached the invariant fiber w = 0\n");
            return 0;
        }

        if (*green_cmd) {
            const MapFile mf = load(map_path);
            const auto v = numbers(point, 4, "--point");
            const auto [z, w] = to_normalized(mf, {v[0], v[1]}, {v[2], v[3]});
            const PointEvaluator eval(mf.normalized.map, parse_function(function), {tol, n_max});
            const GreenValue g = eval(z, w);
            std::cout << g.str() << "\n";
            std::cout << "iterations = " << g.iterations << "\n";
            return 0;
        }

        if (*raster_cmd) {
            const MapFile mf = load(map_path);
            RasterJob job;
            job.function = parse_function(function);
            job.plane = plane == "w" ? Plane::W : Plane::Z;
            const auto fx = numbers(fixed, 2, "--fixed");
            const Complex fixed_c(fx[0], fx[1]);
            job.fixed = job.plane == Plane::W ? fixed_c / mf.normalized.s : fixed_c / mf.normalized.t;
            const auto win = numbers(window, 4, "--window");
            job.x0 = win[0];
            job.x1 = win[1];
            job.y0 = win[2];
            job.y1 = win[3];
            int wpx = 0, hpx = 0;
            char sep = 0;
            std::stringstream ss(size);
            if (!(ss >> wpx >> sep >> hpx) || sep != 'x' || !ss.eof())
                throw CLI::ValidationError("--size", "expected WIDTHxHEIGHT");
            job.width = wpx;
            job.height = hpx;
            job.opts = {tol, n_max};
            job.format = format == "csv" ? RasterFormat::Csv : RasterFormat::Pgm;
            job.pixel_budget = pixel_budget;
            job.threads = threads;

            job.varying_scale = job.plane == Plane::W ? mf.normalized.t : mf.normalized.s;
            const Raster raster = compute_raster(mf.normalized.map, job);
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path, std::ios::binary);
                if (!file) throw DomainError("cannot write '" + out_path + "'");
            }
            std::ostream& os = out_path.empty() ? std::cout : file;
            if (job.format == RasterFormat::Csv)
                write_csv(os, raster);
            else
                write_pgm(os, raster);
            return 0;
        }

        if (*degrees_cmd) {
            const MapFile mf = load(map_path);
            const ExtendedRational a = alpha(mf.map);
            const DegreeGrowth dg = check_degree_growth(mf.map, a, deg_n, compose_options());
            std::printf("%-4s %-12s %-16s %-16s %-9s %s\n", "n", "exact", "lower", "upper", "equality", "within");
            for (const auto& rep : dg.reports) {
                const std::string exact = rep.exact ? std::to_string(*rep.exact) : "budget";
                std::printf("%-4d %-12s %-16s %-16s %-9s %s\n", rep.n, exact.c_str(),
                            mapfile_detail::format_rational(rep.lower).c_str(),
                            mapfile_detail::format_rational(rep.upper).c_str(), rep.equality ? "yes" : "no",
                            rep.within_bounds ? "yes" : "NO");
            }
            for (const auto& wr : dg.weights)
                std::printf("weight of Q^%d: %s (predicted %s)%s\n", wr.n,
                            mapfile_detail::format_rational(wr.actual).c_str(),
                            mapfile_detail::format_rational(wr.predicted).c_str(), wr.match ? "" : " MISMATCH");
            return 0;
        }

        if (*stability_cmd) {
            const MapFile mf = load(map_path);
            const WeightSpec<ExactComplex> spec = weight_spec(mf.map);
            const WeightedExtension<ExactComplex> ext = extend(mf.map, r_weight, s_weight);
            const auto ind = indeterminacy_on_linf(ext);
            const auto v = is_algebraically_stable(mf.map, spec, r_weight, s_weight);
            std::cout << "alpha = " << spec.alpha.str() << " (case: " << spec.tag.str() << "), s/r = "
                      << s_weight << "/" << r_weight << "\n";
            std::cout << "weighted degree D = " << ext.D << ", t cleared = " << ext.t_cleared
                      << ", polynomial lift: " << (v.polynomial_lift ? "yes" : "no") << "\n";
            std::cout << ind.str() << "\n";
            std::cout << "L_inf: " << to_string(v.linf_behavior);
            if (!v.target.empty()) std::cout << " -> " << v.target;
            if (v.linf_behavior == LinfBehavior::InducedByH) std::cout << ", h(1,c) = " << format_poly(v.h, 'c');
            std::cout << "\n";
            std::cout << "algebraically stable: " << (v.algebraically_stable ? "yes" : "no") << "\n";
            try {
                const auto dyn = linf_dynamics(mf.map, spec, r_weight, s_weight);
                std::cout << "L_inf model: c^" << dyn.l << " H(c)^" << dyn.r << " = " << format_poly(dyn.model, 'c')
                          << " with H(c) = " << format_poly(dyn.H, 'c') << "\n";
            } catch (const WrongCase&) {
            } catch (const DecompositionFailure& e) {
                std::cout << "L_inf model: " << e.what() << "\n";
            }
            return 0;
        }

        if (*verify_cmd) {
            verify::Config cfg;
            cfg.scale = verify_scale;
            cfg.oracle = oracle_config();
            cfg.compose = compose_options();
            const bool ok = verify::run_suite(std::cout, cfg);
            std::cout << (ok ? "verify: all checks passed" : "verify: FAILED") << "\n";
            return ok ? 0 : kExitVerify;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
