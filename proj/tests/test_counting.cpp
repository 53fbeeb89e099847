#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <tuple>

#include <boost/math/special_functions/expint.hpp>

#include "geolab/counting.hpp"
#include "geolab/oracle.hpp"
#include "support.hpp"

using namespace geolab;
using testsupport::bolza;
using testsupport::systole;

namespace {

const LengthSpectrum& spectrum10() {
    static const LengthSpectrum s = conjugacy_spectrum(bolza(), 10.0, 2);
    return s;
}

} // namespace

TEST_SUITE("margulis-counter") {

TEST_CASE("count_P examples") {
    const LengthSpectrum& s = spectrum10();
    CHECK(count_P(s, systole(bolza()) - 1e-6) == 0);
    CHECK(count_P(s, 2.0) == 0);
    CHECK(count_P(s, 10.0) == s.entries.size());
    CHECK(count_P(s, 6.0) == brute_force_spectrum(bolza(), 6.0).classes.size());
    try {
        count_P(s, 10.5);
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfRange);
    }
    CHECK_THROWS_AS(count_C(s, 10.5, 0.25), Error);
}

TEST_CASE("count_C examples") {
    const LengthSpectrum& s = spectrum10();
    const double sys = systole(bolza());
    CHECK(count_C(s, 2.5, 0.25) == 0);

    BruteSpectrum brute = brute_force_spectrum(bolza(), 1.2 * sys);
    std::size_t at_systole = 0;
    for (const auto& c : brute.classes)
        if (std::fabs(c.length - sys) < 1e-9) ++at_systole;
    CHECK(at_systole > 0);
    CHECK(count_C(s, sys + 0.1, 0.25) == at_systole);
}

TEST_CASE("telescoping and monotonicity") {
    const LengthSpectrum& s = spectrum10();
    const double eps = 0.25, b = 5.0, T = 10.0;
    std::size_t sum = 0;
    for (double t = T; t > b + 1e-9; t -= eps) sum += count_C(s, t, eps);
    CHECK(sum == count_P(s, T) - count_P(s, b));
    std::size_t prev = 0;
    for (double t = 0.0; t <= 10.0; t += 0.1) {
        std::size_t p = count_P(s, t);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("count options") {
    const LengthSpectrum& s = spectrum10();
    CountOptions prim{true, false}, merged{false, true};
    for (double t : {7.0, 8.5, 10.0}) {
        std::size_t all = count_P(s, t);
        CHECK(count_P(s, t, prim) <= all);
        // a class and its inverse have the same length
        CHECK(2 * count_P(s, t, merged) == all);
    }
    std::size_t nonprim = count_P(s, 10.0) - count_P(s, 10.0, prim);
    std::size_t by_d = 0;
    for (const auto& e : s.entries) by_d += e.d > 1;
    CHECK(nonprim == by_d);
}

TEST_CASE("fit_line") {
    LinearFit f = fit_line({0.0, 1.0, 2.0, 3.0}, {2.0, 5.0, 8.0, 11.0});
    CHECK(f.slope == doctest::Approx(3.0));
    CHECK(f.intercept == doctest::Approx(2.0));
    CHECK(f.slope_stderr == doctest::Approx(0.0).scale(1.0));

    // two points determine the line
    LinearFit g = fit_line({1.0, 4.0}, {1.0, -5.0});
    CHECK(g.slope == doctest::Approx(-2.0));

    // symmetric noise around a line keeps the slope
    LinearFit h = fit_line({0.0, 1.0, 2.0, 3.0, 4.0}, {1.0, 2.5, 3.0, 4.5, 5.0});
    CHECK(h.slope == doctest::Approx(1.0));
    CHECK(h.slope_stderr > 0.0);

    CHECK(fit_exponent({1.0, 2.0, 3.0}, {std::exp(0.5), std::exp(1.0), std::exp(1.5)}).slope ==
          doctest::Approx(0.5));
    try {
        fit_line({2.0, 2.0}, {1.0, 3.0});
        FAIL("expected DegenerateFit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateFit);
    }
    CHECK_THROWS_AS(fit_exponent({1.0, 2.0}, {0.0, 3.0}), Error);
}

TEST_CASE("cesaro smoothing") {
    auto s = cesaro_smooth({1.0, 2.0, 3.0, 4.0, 8.0});
    REQUIRE(s.size() == 5);
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(1.5));
    CHECK(s[2] == doctest::Approx(2.0));
    CHECK(s[3] == doctest::Approx(3.0));
    CHECK(s[4] == doctest::Approx(5.0));
    CHECK(cesaro_smooth({4.0, 6.0}, 1) == std::vector<double>{4.0, 6.0});
}

TEST_CASE("margulis ratio curve") {
    const LengthSpectrum& s = spectrum10();
    std::vector<double> grid{3.0, 4.0, 6.0, 8.0, 10.0};
    CountingReport r = margulis_ratio_curve(s, grid, 0.25);
    REQUIRE(r.t.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(r.P[i] == static_cast<double>(count_P(s, grid[i])));
        CHECK(r.C[i] == static_cast<double>(count_P(s, grid[i]) - count_P(s, grid[i] - 0.25)));
        CHECK(r.ratio[i] == doctest::Approx(r.P[i] * grid[i] * std::exp(-grid[i])));
        if (r.P[i] > 0) CHECK(r.ratio[i] > 0.0);
        if (i > 0) CHECK(r.P[i] >= r.P[i - 1]);
    }
    CHECK(r.P[0] == 0.0);
    CHECK(r.band_max >= r.band_min);
    CHECK(r.fitted_exponent > 0.5);
}

TEST_CASE("synthetic ratio curve is exactly one") {
    std::vector<double> grid;
    for (double t = 7.0; t <= 13.0; t += 0.5) grid.push_back(t);
    CountingReport r = synthetic_ratio_curve(grid, 0.25);
    for (double x : r.ratio) CHECK(std::fabs(x - 1.0) < 1e-12);
    for (double x : r.ratio_smoothed) CHECK(std::fabs(x - 1.0) < 1e-12);
    std::ostringstream out;
    write_counting_csv(out, r, "synthetic");
    std::string text = out.str();
    CHECK(text.rfind("# synthetic\nt,P,C,ratio,ratio_smoothed,fitted_exponent\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(grid.size() + 2));
}

TEST_CASE("entropy estimate") {
    const FuchsianRep& rep = bolza();
    CHECK_THROWS_AS(entropy_estimate(std::vector<double>{10.0}, std::vector<std::uint64_t>{100}), Error);

    std::vector<double> radii{10.0, 10.5, 11.0, 11.5, 12.0};
    EntropyEstimate centre = entropy_estimate(radii, ball_counts(rep, radii, 2));
    EntropyEstimate shifted = entropy_estimate(radii, ball_counts(rep, radii, 2, Point{0.25, 1.3}));
    CHECK(centre.h >= 0.9);
    CHECK(centre.h <= 1.1);
    CHECK(shifted.h >= 0.9);
    CHECK(shifted.h <= 1.1);
    CHECK(std::fabs(centre.h - shifted.h) < 0.1);
    CHECK(centre.lower <= centre.h);
    CHECK(centre.upper >= centre.h);

    std::vector<OrbitBall> balls{enumerate_ball(rep, 5.0), enumerate_ball(rep, 6.0), enumerate_ball(rep, 7.0)};
    EntropyEstimate from_balls = entropy_estimate(balls);
    EntropyEstimate from_counts = entropy_estimate({5.0, 6.0, 7.0}, ball_counts(rep, {5.0, 6.0, 7.0}));
    CHECK(from_balls.h == doctest::Approx(from_counts.h));
}

TEST_CASE("riemann sandwich: synthetic counts give constant one") {
    LengthSpectrum none;
    SandwichReport r = riemann_sandwich_check(none, 8.0, 12.0, 0.25, true);
    CHECK(r.Q == 0.0);
    CHECK(r.counts_bracket);
    CHECK(r.riemann_brackets_integrals);
    CHECK(r.integral_envelope);
    CHECK(r.parts_bounds);
    CHECK(r.monotone_region);
    CHECK(r.b_large_enough);
    CHECK(r.t_k.size() == 17);
    CHECK(r.t_k.front() == 12.0);
    CHECK(r.t_k.back() == doctest::Approx(8.0));
}

TEST_CASE("riemann sandwich integrals match the exponential integral") {
    LengthSpectrum none;
    for (auto [b, T, eps] : {std::tuple{8.0, 12.0, 0.25}, std::tuple{3.0, 5.0, 0.5}, std::tuple{9.0, 13.0, 0.125}}) {
        SandwichReport r = riemann_sandwich_check(none, b, T, eps, true);
        using boost::math::expint;
        CHECK(r.integral_b_T == doctest::Approx(expint(T) - expint(b)).epsilon(1e-12));
        CHECK(r.integral_b_Teps == doctest::Approx(expint(T + eps) - expint(b)).epsilon(1e-12));
        CHECK(r.parts_lower_bound <= r.integral_b_T);
        CHECK(r.parts_lower_bound == doctest::Approx(std::exp(T) / T - std::exp(b) / b));
    }
}

TEST_CASE("riemann sandwich grid alignment") {
    try {
        riemann_sandwich_check(LengthSpectrum{}, 8.0, 12.1, 0.25, true);
        FAIL("expected GridMisaligned");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GridMisaligned);
    }
    CHECK_THROWS_AS(riemann_sandwich_check(spectrum10(), 8.0, 11.0, 0.25), Error);
}

TEST_CASE("riemann sandwich on the enumerated spectrum") {
    SandwichReport r = riemann_sandwich_check(spectrum10(), 6.0, 10.0, 0.25);
    CHECK(r.N == static_cast<double>(count_P(spectrum10(), 10.0) - count_P(spectrum10(), 6.0)));
    CHECK(r.counts_bracket);
    CHECK(r.count_sum_inner == r.N);
    CHECK(std::isfinite(r.Q));
    CHECK(r.integral_envelope);
    CHECK(r.riemann_brackets_integrals);
    CHECK(r.parts_bounds);
}

}
