#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "geolab/counting.hpp"
#include "geolab/flowbox.hpp"
#include "geolab/selftest.hpp"
#include "geolab/spectrum.hpp"
#include "geolab/version.hpp"

using namespace geolab;

namespace {

enum Exit { kPass = 0, kViolation = 1, kResourceCap = 2, kConfigError = 3 };

struct RunConfig {
    int genus = 2;
    double tmax = 8.0;
    std::optional<double> eps;
    double theta = 0.05;
    double alpha = 0.1;
    std::optional<double> step;
    int workers = std::max(1u, std::thread::hardware_concurrency());
    std::size_t cap = 0;
    std::string out = ".";
    std::uint64_t seed = 1;
    bool paper_regime = false;

    double eps_or(double d) const { return eps.value_or(d); }
    double step_or(double d) const { return step.value_or(d); }
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string short_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Worker count and output directory are left out so reruns diff cleanly.
std::string comment_line(const std::string& command, const RunConfig& c, double eps, double step) {
    std::ostringstream s;
    s << "geolab " << kVersion << " command=" << command << " genus=" << c.genus << " tmax=" << short_double(c.tmax)
      << " eps=" << short_double(eps) << " theta=" << short_double(c.theta) << " alpha=" << short_double(c.alpha)
      << " step=" << short_double(step) << " cap=" << c.cap << " seed=" << c.seed
      << " paper_regime=" << (c.paper_regime ? 1 : 0);
    return s.str();
}

std::ofstream open_output(const RunConfig& c, const std::string& name, std::string* path = nullptr) {
    std::filesystem::create_directories(c.out);
    std::string p = (std::filesystem::path(c.out) / name).string();
    std::ofstream f(p);
    if (!f) throw ConfigError("cannot write " + p);
    if (path) *path = p;
    return f;
}

double systole(const FuchsianRep& rep) {
    double t = 0.0;
    for (int l = 0; l < rep.letter_count(); l += 2)
        t = std::max(t, translation_length(rep.gen(static_cast<Letter>(l))));
    LengthSpectrum s = conjugacy_spectrum(rep, t);
    return s.entries.front().length;
}

void validate(const RunConfig& c, const FuchsianRep& rep, double eps) {
    if (!(c.tmax > 0)) throw ConfigError("tmax must be positive");
    if (!(eps > 0)) throw ConfigError("eps must be positive");
    if (!(c.alpha > 0)) throw ConfigError("alpha must be positive");
    if (c.alpha > 1.5 * eps + 1e-15) throw ConfigError("alpha must not exceed 3 eps / 2");
    if (!(c.theta > 0) || c.theta >= 0.5 * std::numbers::pi) throw ConfigError("theta must lie in (0, pi/2)");
    if (c.workers < 1) throw ConfigError("workers must be at least 1");
    if (c.paper_regime) {
        double limit = std::min(0.125, systole(rep) / 8.0);
        if (eps > limit) throw ConfigError("paper regime needs eps <= " + format_double(limit));
    }
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0)) throw ConfigError("step must be positive");
    if (lo > hi + 1e-12) throw ConfigError("grid start exceeds tmax");
    std::vector<double> g;
    long n = std::lround(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= n; ++k) g.push_back(lo + static_cast<double>(k) * step);
    return g;
}

const char* pass_word(bool ok) { return ok ? "PASS" : "FAIL"; }

int cmd_spectrum(const RunConfig& c) {
    FuchsianRep rep = build_fuchsian_rep(c.genus);
    validate(c, rep, c.eps_or(0.25));
    std::string comment = comment_line("spectrum", c, c.eps_or(0.25), c.step_or(1.0));
    std::string path;
    try {
        LengthSpectrum spec = conjugacy_spectrum(rep, c.tmax, c.workers, c.cap);
        auto f = open_output(c, "spectrum.csv", &path);
        write_spectrum_csv(f, spec, comment);
        std::cout << "classes " << spec.entries.size() << " with length <= " << format_double(c.tmax) << '\n';
        if (!spec.entries.empty()) std::cout << "systole " << format_double(spec.entries.front().length) << '\n';
        std::cout << "wrote " << path << '\n';
        return kPass;
    } catch (const SpectrumCapExceeded& e) {
        auto f = open_output(c, "spectrum.csv", &path);
        write_spectrum_csv(f, e.partial(), comment + " partial=1 element cap reached");
        std::cerr << "element cap " << c.cap << " reached; partial spectrum in " << path << '\n';
        return kResourceCap;
    }
}

int cmd_margulis(const RunConfig& c, double tmin_opt, bool synthetic, bool primitive, bool merged) {
    FuchsianRep rep = build_fuchsian_rep(c.genus);
    const double eps = c.eps_or(0.25), step = c.step_or(1.0);
    validate(c, rep, eps);
    const double tmin = tmin_opt > 0 ? tmin_opt : std::max(step, c.tmax - 6.0);
    std::vector<double> grid = make_grid(tmin, c.tmax, step);
    CountOptions opt{primitive, merged};

    LengthSpectrum spec;
    if (!synthetic) {
        try {
            spec = conjugacy_spectrum(rep, c.tmax, c.workers, c.cap);
        } catch (const SpectrumCapExceeded& e) {
            std::cerr << "element cap " << c.cap << " reached; counting report not written\n";
            return kResourceCap;
        }
    }
    CountingReport rep_curve = synthetic ? synthetic_ratio_curve(grid, eps) : margulis_ratio_curve(spec, grid, eps, opt);
    SandwichReport sw;
    try {
        sw = riemann_sandwich_check(spec, tmin, c.tmax, eps, synthetic);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::GridMisaligned) throw ConfigError("(tmax - tmin)/eps must be an integer");
        throw;
    }

    std::string comment = comment_line("margulis", c, eps, step) + (synthetic ? " synthetic=1" : "") +
                          (primitive ? " primitive=1" : "") + (merged ? " merged=1" : "");
    std::string p1, p2;
    {
        auto f = open_output(c, "margulis.csv", &p1);
        write_counting_csv(f, rep_curve, comment);
    }
    {
        auto f = open_output(c, "sandwich.csv", &p2);
        f << "# " << comment << '\n' << "k,t_k,C_k\n";
        for (std::size_t k = 0; k < sw.t_k.size(); ++k)
            f << k << ',' << format_double(sw.t_k[k]) << ',' << format_double(sw.C_k[k]) << '\n';
    }

    bool monotone = std::is_sorted(rep_curve.P.begin(), rep_curve.P.end());
    bool parts = !sw.monotone_region || sw.parts_bounds;
    std::cout << "ratio P(t) t e^-t at t=" << format_double(grid.back()) << ": " << format_double(rep_curve.ratio.back())
              << " (smoothed " << format_double(rep_curve.ratio_smoothed.back()) << ")\n";
    std::cout << "fitted exponent " << format_double(rep_curve.fitted_exponent) << " +- "
              << format_double(rep_curve.fitted_exponent_stderr) << '\n';
    std::cout << "sandwich N=" << format_double(sw.N) << " riemann=" << format_double(sw.riemann_lower)
              << " integral=[" << format_double(sw.integral_b_T) << ", " << format_double(sw.integral_b_Teps)
              << "] Q=" << format_double(sw.Q) << '\n';
    std::cout << pass_word(sw.counts_bracket) << " telescoping\n";
    std::cout << pass_word(sw.riemann_brackets_integrals) << " riemann sums bracket the integrals\n";
    std::cout << pass_word(parts) << " integration by parts bounds\n";
    std::cout << pass_word(monotone) << " P(t) nondecreasing\n";
    std::cout << "wrote " << p1 << " and " << p2 << '\n';
    return sw.counts_bracket && sw.riemann_brackets_integrals && parts && monotone ? kPass : kViolation;
}

std::vector<FlowBoxSpec> random_family(const FuchsianRep& rep, const RunConfig& c, double eps, int points) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<FlowBoxSpec> fam;
    for (int i = 0; i < points; ++i) {
        double r = (0.15 + 0.3 * unit(rng)) * rep.inradius;
        double dir = 2.0 * std::numbers::pi * unit(rng);
        Point p = geodesic_flow(UnitVector{rep.center, dir}, r).base;
        auto f = box_family(p, 2.0 * std::numbers::pi * unit(rng), c.theta, eps, c.alpha);
        fam.insert(fam.end(), f.begin(), f.end());
    }
    return fam;
}

int cmd_flowbox(const RunConfig& c, double tmin_opt, int points) {
    FuchsianRep rep = build_fuchsian_rep(c.genus);
    const double eps = c.eps_or(0.1), step = c.step_or(0.5), e2 = eps * eps;
    validate(c, rep, eps);
    if (points < 1) throw ConfigError("need at least one base point");
    std::vector<FlowBoxSpec> fam;
    try {
        fam = random_family(rep, c, eps, points);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    std::vector<double> grid = make_grid(tmin_opt > 0 ? tmin_opt : std::max(step, c.tmax - 2.0), c.tmax, step);

    OrbitBall ball;
    try {
        ball = enumerate_ball(rep, sweep_ball_radius(rep, fam, c.tmax), c.workers, c.cap);
    } catch (const BallCapExceeded&) {
        std::cerr << "element cap " << c.cap << " reached; sweep not written\n";
        return kResourceCap;
    }

    std::string comment = comment_line("flowbox", c, eps, step) + " boxes=" + std::to_string(fam.size());
    std::string p1, p2;
    std::size_t window_bad = 0, endpoint_bad = 0, inclusion_bad = 0, scaling_bad = 0, star = 0;
    double osc = 0.0, qerr = 0.0;
    {
        auto f = open_output(c, "flowbox_sweep.csv", &p1);
        f << "# " << comment << '\n'
          << "t,box,gamma_word,length,in_Gamma,in_GammaStar,in_GammaPrime,window_ok,endpoints_ok,scaling_ratio\n";
        for (double t : grid) {
            for (std::size_t b = 0; b < fam.size(); ++b) {
                for (const GammaRecord& r : sweep_gamma_sets(rep, fam[b], ball, t, c.alpha)) {
                    std::string ratio;
                    if (r.in_gamma_star) {
                        ++star;
                        ScalingReport s = scaling_check(fam[b], PairMeasureGrid{fam[b].p}, r.g);
                        ratio = format_double(s.ratio);
                        scaling_bad += !s.in_band;
                        qerr = std::max(qerr, s.quad_error);
                    }
                    window_bad += !r.window_ok;
                    endpoint_bad += !r.endpoints_ok;
                    inclusion_bad += (r.in_gamma_prime && !r.in_gamma_star) || (r.in_gamma_star && !r.in_gamma);
                    osc = std::max(osc, b_gamma_oscillation(fam[b], r.g));
                    f << format_double(t) << ',' << b << ',' << r.g.word->str() << ',' << format_double(r.length)
                      << ',' << r.in_gamma << ',' << r.in_gamma_star << ',' << r.in_gamma_prime << ','
                      << r.window_ok << ',' << r.endpoints_ok << ',' << ratio << '\n';
                }
            }
        }
    }
    MixingSeries mix = mixing_ratio_curve(rep, fam, ball, grid, c.alpha);
    {
        auto f = open_output(c, "flowbox_mixing.csv", &p2);
        f << "# " << comment << '\n' << "t,gamma_star,gamma,R_star,R,band_lo,band_hi\n";
        for (const auto& m : mix.points)
            f << format_double(m.t) << ',' << m.gamma_star << ',' << m.gamma << ',' << format_double(m.R_star) << ','
              << format_double(m.R) << ',' << format_double(mix.band_lo) << ',' << format_double(mix.band_hi) << '\n';
    }
    std::size_t sandwich_bad = 0;
    for (const auto& box : fam) {
        PiSandwich s = pi_sandwich_check(rep, box, ball, c.tmax);
        sandwich_bad += !s.lower_ok || !s.upper_ok;
    }
    ContinuityGate gate = continuity_gate(fam.front(), PairMeasureGrid{fam.front().p});

    std::cout << fam.size() << " boxes, " << star << " Gamma* members over the grid\n";
    for (const auto& m : mix.points)
        std::cout << "t=" << format_double(m.t) << " R*=" << format_double(m.R_star) << " R=" << format_double(m.R)
                  << '\n';
    std::cout << "band [" << format_double(mix.band_lo) << ", " << format_double(mix.band_hi) << "]\n";
    std::cout << pass_word(window_bad == 0) << " period window (" << window_bad << " violations)\n";
    std::cout << pass_word(endpoint_bad == 0) << " axis endpoints in P x F (" << endpoint_bad << " violations)\n";
    std::cout << pass_word(inclusion_bad == 0) << " Gamma' in Gamma* in Gamma\n";
    std::cout << pass_word(sandwich_bad == 0) << " Pi-hat sandwich at t=" << format_double(c.tmax) << '\n';
    std::cout << (scaling_bad == 0 ? "ok" : "out of band") << " scaling ratios (" << scaling_bad
              << " outside, quadrature error " << format_double(qerr) << ")\n";
    std::cout << (osc < e2 ? "ok" : "large") << " b oscillation " << format_double(osc) << " vs eps^2 "
              << format_double(e2) << '\n';
    std::cout << (gate.pass ? "ok" : "rejected") << " continuity gate " << format_double(gate.variation) << '\n';
    std::cout << "wrote " << p1 << " and " << p2 << '\n';
    return window_bad == 0 && endpoint_bad == 0 && inclusion_bad == 0 && sandwich_bad == 0 ? kPass : kViolation;
}

int cmd_equidist(const RunConfig& c, double tmin_opt, int bins) {
    FuchsianRep rep = build_fuchsian_rep(c.genus);
    const double eps = c.eps_or(0.25), step = c.step_or(1.0);
    validate(c, rep, eps);
    if (bins < 1) throw ConfigError("bins must be positive");
    std::vector<double> grid = make_grid(tmin_opt > 0 ? tmin_opt : std::max(step, c.tmax - 4.0), c.tmax, step);
    LengthSpectrum spec;
    try {
        spec = conjugacy_spectrum(rep, c.tmax, c.workers, c.cap);
    } catch (const SpectrumCapExceeded&) {
        std::cerr << "element cap " << c.cap << " reached; report not written\n";
        return kResourceCap;
    }
    auto series = endpoint_equidistribution(rep, spec, grid, eps, bins);
    const double r = 0.5 * rep.inradius;
    std::string path;
    auto f = open_output(c, "equidist.csv", &path);
    f << "# " << comment_line("equidist", c, eps, step) << " bins=" << bins << '\n'
      << "t,classes,tv,occupation,occupation_reference\n";
    for (const auto& p : series) {
        OccupationPoint o = disc_occupation(rep, spec, p.t, eps, r);
        f << format_double(p.t) << ',' << p.classes << ',' << format_double(p.tv) << ',' << format_double(o.empirical)
          << ',' << format_double(o.reference) << '\n';
        std::cout << "t=" << format_double(p.t) << " classes=" << p.classes << " tv=" << format_double(p.tv)
                  << " occupation=" << format_double(o.empirical) << '/' << format_double(o.reference) << '\n';
    }
    std::cout << "wrote " << path << '\n';
    return kPass;
}

int cmd_entropy(const RunConfig& c, double rmin_opt) {
    FuchsianRep rep = build_fuchsian_rep(c.genus);
    const double step = c.step_or(0.5);
    validate(c, rep, c.eps_or(0.25));
    std::vector<double> radii = make_grid(rmin_opt > 0 ? rmin_opt : std::max(step, c.tmax - 4.0), c.tmax, step);
    auto counts = ball_counts(rep, radii, c.workers);
    EntropyEstimate h = entropy_estimate(radii, counts);
    std::string path;
    auto f = open_output(c, "entropy.csv", &path);
    f << "# " << comment_line("entropy", c, c.eps_or(0.25), step) << '\n' << "R,N\n";
    for (std::size_t i = 0; i < radii.size(); ++i) f << format_double(radii[i]) << ',' << counts[i] << '\n';
    std::cout << "h = " << format_double(h.h) << " +- " << format_double(h.stderr_h) << " (2-sigma ["
              << format_double(h.lower) << ", " << format_double(h.upper) << "])\n";
    std::cout << "wrote " << path << '\n';
    return kPass;
}

int cmd_selftest(const RunConfig& c, double perturb) {
    FuchsianRep rep = build_fuchsian_rep(c.genus);
    if (perturb != 0.0) {
        rep.generators[0].a += perturb;
        try {
            check_relation(rep);
        } catch (const Error& e) {
            std::cout << "FAIL relation_residual " << e.what() << '\n';
            return kViolation;
        }
    }
    bool all = true;
    for (const CheckResult& r : run_selftest(rep, c.seed, c.workers)) {
        all = all && r.pass;
        std::printf("%s %-28s worst %.3e limit %.1e samples %zu\n", pass_word(r.pass), r.name.c_str(), r.worst,
                    r.limit, r.samples);
    }
    return all ? kPass : kViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed geodesic counting on compact hyperbolic surfaces"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "flat key = value file; flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--genus", cfg.genus, "surface genus (>= 2)")->capture_default_str();
    app.add_option("--tmax", cfg.tmax, "largest length or radius")->capture_default_str();
    app.add_option("--eps", cfg.eps, "window width eps");
    app.add_option("--theta", cfg.theta, "flow-box aperture")->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "flow-box height")->capture_default_str();
    app.add_option("--step", cfg.step, "grid step");
    app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
    app.add_option("--cap", cfg.cap, "element cap, 0 for none")->capture_default_str();
    app.add_option("--out", cfg.out, "output directory")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
    app.add_flag("--paper-regime", cfg.paper_regime, "enforce eps <= min(1/8, inj/4)");

    double tmin = 0.0, perturb = 0.0;
    bool synthetic = false, primitive = false, merged = false;
    int bins = 16, points = 4;

    auto* spectrum = app.add_subcommand("spectrum", "oriented length spectrum up to tmax");
    auto* margulis = app.add_subcommand("margulis", "counting ratios and the Riemann sandwich");
    margulis->add_option("--tmin", tmin, "first grid point");
    margulis->add_flag("--synthetic", synthetic, "inject counts e^t/t");
    margulis->add_flag("--primitive", primitive, "count primitive classes only");
    margulis->add_flag("--merged", merged, "one class per unoriented geodesic");
    auto* flowbox = app.add_subcommand("flowbox", "flow-box sweeps, scaling and mixing ratios");
    flowbox->add_option("--tmin", tmin, "first grid point");
    flowbox->add_option("--base-points", points, "number of random base points")->capture_default_str();
    auto* equidist = app.add_subcommand("equidist", "boundary-pair equidistribution");
    equidist->add_option("--tmin", tmin, "first grid point");
    equidist->add_option("--bins", bins, "bins per boundary factor")->capture_default_str();
    auto* entropy = app.add_subcommand("entropy", "orbit growth exponent");
    entropy->add_option("--rmin", tmin, "smallest radius");
    auto* selftest = app.add_subcommand("selftest", "invariant suite");
    selftest->add_option("--perturb", perturb, "add this to one generator entry before the relation gate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : kConfigError;
    }

    try {
        if (*spectrum) return cmd_spectrum(cfg);
        if (*margulis) return cmd_margulis(cfg, tmin, synthetic, primitive, merged);
        if (*flowbox) return cmd_flowbox(cfg, tmin, points);
        if (*equidist) return cmd_equidist(cfg, tmin, bins);
        if (*entropy) return cmd_entropy(cfg, tmin);
        if (*selftest) return cmd_selftest(cfg, perturb);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::ResourceCap: return kResourceCap;
        case ErrorKind::InvalidGenus:
        case ErrorKind::InvalidArgument:
        case ErrorKind::GridMisaligned:
        case ErrorKind::ApertureTooLarge: return kConfigError;
        default: return kViolation;
        }
    }
    return kConfigError;
}
