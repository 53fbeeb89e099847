#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geolab/spectrum.hpp"

namespace geolab {

struct CountOptions {
    bool primitive_only = false;
    // One class per unoriented closed geodesic.
    bool orientation_merged = false;
};

// Classes with length <= t.  Throws OutOfRange for t > spec.t_max.
std::size_t count_P(const LengthSpectrum& spec, double t, CountOptions opt = {});
// Classes with length in (t - eps, t].
std::size_t count_C(const LengthSpectrum& spec, double t, double eps, CountOptions opt = {});

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};
// Least squares; DegenerateFit for fewer than two distinct abscissae.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
// Slope of log y against x; nonpositive values are a DegenerateFit.
LinearFit fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

// Trailing mean over `window` points (fewer at the start of the series).
std::vector<double> cesaro_smooth(const std::vector<double>& v, int window = 3);

struct CountingReport {
    std::vector<double> t;
    std::vector<double> P;
    std::vector<double> C; // classes in (t - eps, t]
    std::vector<double> ratio;    // P(t) h t e^{-h t}
    std::vector<double> ratio_smoothed;
    double eps = 0.25;
    double h_used = 1.0;
    double fitted_exponent = 0.0; // slope of log P over the grid
    double fitted_exponent_stderr = 0.0;
    double band_min = 0.0; // min and max of the ratio over the grid
    double band_max = 0.0;
};

CountingReport margulis_ratio_curve(const LengthSpectrum& spec, const std::vector<double>& grid, double eps,
                                    CountOptions opt = {}, double h = 1.0);
// Same report for the injected counts P(t) = e^{ht}/(ht), C(t) = eps e^{ht}/t,
// so every ratio is 1 up to rounding.
CountingReport synthetic_ratio_curve(const std::vector<double>& grid, double eps, double h = 1.0);
void write_counting_csv(std::ostream& out, const CountingReport& rep, const std::string& comment = "");

struct EntropyEstimate {
    double h = 0.0;
    double stderr_h = 0.0;
    double lower = 0.0; // h -+ 2 stderr
    double upper = 0.0;
};
// Slope of log N(R) against R.
EntropyEstimate entropy_estimate(const std::vector<double>& radii, const std::vector<std::uint64_t>& counts);
EntropyEstimate entropy_estimate(const std::vector<OrbitBall>& balls);

struct SandwichReport {
    double b = 0.0, T = 0.0, eps = 0.0, h = 1.0;
    bool synthetic = false;
    std::vector<double> t_k; // T - k eps, k = 0..ceil((T-b)/eps)
    std::vector<double> C_k;
    double N = 0.0; // #(P(T) \ P(b))
    // Count sums over the bins inside (b, T] and over the bins covering it.
    double count_sum_inner = 0.0;
    double count_sum_outer = 0.0;
    // sum eps e^{h t_k}/t_k over k <= floor((T-b)/eps) and k <= ceil((T-b)/eps)
    double riemann_lower = 0.0;
    double riemann_upper = 0.0;
    double integral_b_T = 0.0;     // quadrature of e^{ht}/t over [b, T]
    double integral_b_Teps = 0.0;  // over [b, T + eps]
    double integral_error = 0.0;
    double parts_lower_bound = 0.0; // e^{hT}/(hT) - e^{hb}/(hb)
    double parts_upper_bound = 0.0; // e^{h eps} e^{hT}/(hT), compared with (1 - 1/(hb)) integral_b_Teps
    double Q = 0.0;                  // smallest Q with e^{-2Q eps} riemann_lower <= N <= e^{2Q eps} riemann_upper
    bool counts_bracket = false;     // count_sum_inner <= N <= count_sum_outer
    bool riemann_brackets_integrals = false; // integral_b_T <= riemann_lower, riemann_upper <= integral_b_Teps
    bool integral_envelope = false;  // e^{-2Q eps} integral_b_T <= N <= e^{2Q eps} integral_b_Teps
    bool parts_bounds = false;       // both integration-by-parts inequalities
    bool monotone_region = false;    // b >= 1/h, so e^{ht}/t is nondecreasing on (b, inf)
    bool b_large_enough = false;     // 1 - 1/(hb) >= e^{-h eps}
};

// Grid t_k = T - k eps must reach b exactly (GridMisaligned otherwise).  In
// synthetic mode #C(t_k) := eps e^{h t_k}/t_k and N is their sum over
// k <= floor((T-b)/eps).
SandwichReport riemann_sandwich_check(const LengthSpectrum& spec, double b, double T, double eps,
                                      bool synthetic = false, double h = 1.0);

} // namespace geolab
