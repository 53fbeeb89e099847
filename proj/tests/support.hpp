#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "geolab/core.hpp"
#include "geolab/fuchsian.hpp"
#include "geolab/spectrum.hpp"

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline const geolab::FuchsianRep& bolza() {
    static const geolab::FuchsianRep rep = geolab::build_fuchsian_rep(2);
    return rep;
}

inline double systole(const geolab::FuchsianRep& rep) {
    return 2.0 * std::acosh(std::fabs(rep.gen(0).trace()) / 2.0);
}

// Hand-rolled generators for the property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    geolab::Point point() { return {uniform(-2.0, 2.0), std::exp(uniform(-1.5, 1.5))}; }
    geolab::BoundaryPoint boundary() { return geolab::BoundaryPoint::from_angle(uniform(0.0, kTwoPi)); }

    geolab::Mat2 isometry() {
        double a = std::exp(uniform(-1.0, 1.0)), x = uniform(-2.0, 2.0), phi = uniform(0.0, kTwoPi);
        geolab::Mat2 rot{std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi)};
        return geolab::Mat2{1.0, x, 0.0, 1.0} * geolab::Mat2{a, 0.0, 0.0, 1.0 / a} * rot;
    }

    // Freely reduced word over 2 * generators letters.
    geolab::Word word(int letters, int length) {
        geolab::Word w;
        int prev = -1;
        while (static_cast<int>(w.size()) < length) {
            int l = integer(0, letters - 1);
            if (prev >= 0 && l == (prev ^ 1)) continue;
            w.push_back(static_cast<geolab::Letter>(l));
            prev = l;
        }
        return w;
    }

private:
    std::mt19937_64 rng_;
};

// Signed difference of two Cayley angles folded into (-pi, pi].
inline double angle_gap(double a, double b) {
    double d = std::remainder(a - b, kTwoPi);
    return d;
}

// Cayley angle of the limit of a geodesic ray: flow far and read off the disk
// argument of the base point.
inline double shoot(const geolab::UnitVector& v, double time = 40.0) {
    geolab::DiskPoint w = geolab::cayley(geolab::geodesic_flow(v, time).base);
    return std::atan2(w.im, w.re);
}

} // namespace testsupport
