#include "geolab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace geolab {

namespace {

bool counted(const SpectrumEntry& e, const CountOptions& opt) {
    if (opt.primitive_only && e.d != 1) return false;
    if (opt.orientation_merged && !e.orientation_leader) return false;
    return true;
}

void check_range(const LengthSpectrum& spec, double t) {
    if (t > spec.t_max * (1.0 + 1e-15)) throw Error(ErrorKind::OutOfRange, "t exceeds the spectrum range");
}

} // namespace

std::size_t count_P(const LengthSpectrum& spec, double t, CountOptions opt) {
    check_range(spec, t);
    std::size_t n = 0;
    for (const auto& e : spec.entries) {
        if (e.length > t) break;
        if (counted(e, opt)) ++n;
    }
    return n;
}

std::size_t count_C(const LengthSpectrum& spec, double t, double eps, CountOptions opt) {
    check_range(spec, t);
    if (!(eps > 0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
    std::size_t n = 0;
    for (const auto& e : spec.entries) {
        if (e.length > t) break;
        if (e.length > t - eps && counted(e, opt)) ++n;
    }
    return n;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw Error(ErrorKind::DegenerateFit, "need at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0)) throw Error(ErrorKind::DegenerateFit, "abscissae coincide");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (n > 2) {
        double ss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = y[i] - (f.intercept + f.slope * x[i]);
            ss += r * r;
        }
        f.slope_stderr = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
    }
    return f;
}

LinearFit fit_exponent(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> ly;
    for (double v : y) {
        if (!(v > 0)) throw Error(ErrorKind::DegenerateFit, "log fit needs positive values");
        ly.push_back(std::log(v));
    }
    return fit_line(x, ly);
}

std::vector<double> cesaro_smooth(const std::vector<double>& v, int window) {
    if (window < 1) throw Error(ErrorKind::InvalidArgument, "window must be positive");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t lo = i + 1 >= static_cast<std::size_t>(window) ? i + 1 - static_cast<std::size_t>(window) : 0;
        double s = 0;
        for (std::size_t j = lo; j <= i; ++j) s += v[j];
        out[i] = s / static_cast<double>(i - lo + 1);
    }
    return out;
}

CountingReport margulis_ratio_curve(const LengthSpectrum& spec, const std::vector<double>& grid, double eps,
                                    CountOptions opt, double h) {
    if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
    CountingReport r;
    r.eps = eps;
    r.h_used = h;
    r.t = grid;
    std::vector<double> pos_t, pos_p;
    for (double t : grid) {
        auto p = static_cast<double>(count_P(spec, t, opt));
        r.P.push_back(p);
        r.C.push_back(static_cast<double>(count_C(spec, t, eps, opt)));
        r.ratio.push_back(p * h * t * std::exp(-h * t));
        if (p > 0) {
            pos_t.push_back(t);
            pos_p.push_back(p);
        }
    }
    r.ratio_smoothed = cesaro_smooth(r.ratio, 3);
    r.band_min = *std::min_element(r.ratio.begin(), r.ratio.end());
    r.band_max = *std::max_element(r.ratio.begin(), r.ratio.end());
    if (pos_t.size() >= 2) {
        LinearFit f = fit_exponent(pos_t, pos_p);
        r.fitted_exponent = f.slope;
        r.fitted_exponent_stderr = f.slope_stderr;
    }
    return r;
}

CountingReport synthetic_ratio_curve(const std::vector<double>& grid, double eps, double h) {
    if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
    CountingReport r;
    r.eps = eps;
    r.h_used = h;
    r.t = grid;
    for (double t : grid) {
        if (!(t > 0)) throw Error(ErrorKind::InvalidArgument, "synthetic counts need t > 0");
        double p = std::exp(h * t) / (h * t);
        r.P.push_back(p);
        r.C.push_back(eps * std::exp(h * t) / t);
        r.ratio.push_back(p * h * t * std::exp(-h * t));
    }
    r.ratio_smoothed = cesaro_smooth(r.ratio, 3);
    r.band_min = *std::min_element(r.ratio.begin(), r.ratio.end());
    r.band_max = *std::max_element(r.ratio.begin(), r.ratio.end());
    if (grid.size() >= 2) {
        LinearFit f = fit_exponent(r.t, r.P);
        r.fitted_exponent = f.slope;
        r.fitted_exponent_stderr = f.slope_stderr;
    }
    return r;
}

void write_counting_csv(std::ostream& out, const CountingReport& rep, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    out << "t,P,C,ratio,ratio_smoothed,fitted_exponent\n";
    for (std::size_t i = 0; i < rep.t.size(); ++i) {
        out << format_double(rep.t[i]) << ',' << format_double(rep.P[i]) << ',' << format_double(rep.C[i]) << ','
            << format_double(rep.ratio[i])
            << ',' << format_double(rep.ratio_smoothed[i]) << ',' << format_double(rep.fitted_exponent) << '\n';
    }
}

EntropyEstimate entropy_estimate(const std::vector<double>& radii, const std::vector<std::uint64_t>& counts) {
    std::vector<double> c(counts.begin(), counts.end());
    LinearFit f = fit_exponent(radii, c);
    return {f.slope, f.slope_stderr, f.slope - 2 * f.slope_stderr, f.slope + 2 * f.slope_stderr};
}

EntropyEstimate entropy_estimate(const std::vector<OrbitBall>& balls) {
    std::vector<double> radii;
    std::vector<std::uint64_t> counts;
    for (const auto& b : balls) {
        radii.push_back(b.radius);
        counts.push_back(b.elements.size());
    }
    return entropy_estimate(radii, counts);
}

SandwichReport riemann_sandwich_check(const LengthSpectrum& spec, double b, double T, double eps, bool synthetic,
                                      double h) {
    if (!(eps > 0) || !(b > 0) || !(T > b)) throw Error(ErrorKind::InvalidArgument, "need 0 < b < T and eps > 0");
    double steps = (T - b) / eps;
    long K = std::lround(steps);
    if (std::fabs(steps - static_cast<double>(K)) > 1e-9) throw Error(ErrorKind::GridMisaligned, "(T - b)/eps is not an integer");
    if (!synthetic) check_range(spec, T);

    SandwichReport r;
    r.b = b;
    r.T = T;
    r.eps = eps;
    r.h = h;
    r.synthetic = synthetic;
    auto f = [h](double t) { return std::exp(h * t) / t; };
    for (long k = 0; k <= K; ++k) {
        double tk = T - static_cast<double>(k) * eps;
        r.t_k.push_back(tk);
        r.C_k.push_back(synthetic ? eps * f(tk) : static_cast<double>(count_C(spec, tk, eps)));
        r.riemann_lower += eps * f(tk);
    }
    // aligned grid: floor and ceil coincide
    r.riemann_upper = r.riemann_lower;
    // bins (t_k - eps, t_k] with k < K tile (b, T] exactly
    for (long k = 0; k < K; ++k) r.count_sum_inner += r.C_k[static_cast<std::size_t>(k)];
    r.count_sum_outer = r.count_sum_inner;
    if (synthetic) {
        r.N = r.riemann_lower;
        r.count_sum_inner = r.count_sum_outer = r.N;
    } else {
        r.N = static_cast<double>(count_P(spec, T)) - static_cast<double>(count_P(spec, b));
    }

    using boost::math::quadrature::gauss_kronrod;
    double e1 = 0, e2 = 0;
    r.integral_b_T = gauss_kronrod<double, 61>::integrate(f, b, T, 15, 1e-13, &e1);
    r.integral_b_Teps = gauss_kronrod<double, 61>::integrate(f, b, T + eps, 15, 1e-13, &e2);
    r.integral_error = std::max(e1, e2);
    if (!std::isfinite(r.integral_b_T) || r.integral_error > 1e-8 * r.integral_b_Teps)
        throw Error(ErrorKind::QuadratureFailure, "integral of e^{ht}/t did not converge");

    r.parts_lower_bound = f(T) / h - f(b) / h;
    r.parts_upper_bound = std::exp(h * eps) * f(T) / h;

    if (r.N > 0) {
        double q = std::max({0.0, std::log(r.riemann_lower / r.N), std::log(r.N / r.riemann_upper)});
        r.Q = q / (2.0 * eps);
    } else {
        r.Q = std::numeric_limits<double>::infinity();
    }
    r.counts_bracket = r.count_sum_inner <= r.N && r.N <= r.count_sum_outer;
    r.riemann_brackets_integrals = r.integral_b_T <= r.riemann_lower && r.riemann_upper <= r.integral_b_Teps;
    const double slack = 1.0 + 1e-12;
    double env = std::exp(2.0 * r.Q * eps);
    r.integral_envelope = r.integral_b_T / env <= r.N * slack && r.N <= env * r.integral_b_Teps * slack;
    r.parts_bounds = r.parts_lower_bound <= r.integral_b_T &&
                     (1.0 - 1.0 / (h * b)) * r.integral_b_Teps <= r.parts_upper_bound;
    r.monotone_region = h * b >= 1.0;
    r.b_large_enough = 1.0 - 1.0 / (h * b) >= std::exp(-h * eps);
    return r;
}

} // namespace geolab
