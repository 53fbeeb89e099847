#include "geolab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "geolab/flowbox.hpp"
#include "geolab/oracle.hpp"
#include "geolab/spectrum.hpp"

namespace geolab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    Point point() { return {uniform(-2.0, 2.0), std::exp(uniform(-2.0, 2.0))}; }
    BoundaryPoint boundary() { return BoundaryPoint::from_angle(uniform(0.0, kTwoPi)); }

    Word reduced_word(const FuchsianRep& rep, int length) {
        Word w;
        int prev = -1;
        while (static_cast<int>(w.size()) < length) {
            int l = integer(0, rep.letter_count() - 1);
            if (prev >= 0 && l == (prev ^ 1)) continue;
            w.push_back(static_cast<Letter>(l));
            prev = l;
        }
        return w;
    }

    // Random Mobius map with entries of moderate size.
    Mat2 isometry() {
        double a = std::exp(uniform(-1.5, 1.5)), x = uniform(-2.0, 2.0), phi = uniform(0.0, kTwoPi);
        Mat2 rot{std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi)};
        Mat2 dil{a, 0.0, 0.0, 1.0 / a};
        Mat2 shift{1.0, x, 0.0, 1.0};
        return shift * dil * rot;
    }

private:
    std::mt19937_64 rng_;
};

struct Tracker {
    CheckResult r;
    Tracker(std::string name, double limit) {
        r.name = std::move(name);
        r.limit = limit;
    }
    void add(double residual) {
        ++r.samples;
        if (!(residual <= r.worst)) r.worst = std::isnan(residual) ? INFINITY : residual;
    }
    CheckResult done() {
        r.pass = r.worst < r.limit;
        return r;
    }
};

// Point at distance s from p along the ray towards xi.
Point ray_point(const Point& p, const BoundaryPoint& xi, double s) {
    Mat2 h = xi.is_infinite() ? Mat2::identity() : Mat2{0.0, -1.0, 1.0, -xi.x()};
    Point q = mobius_apply(h, p);
    return mobius_apply(h.inverse(), Point{q.x, q.y * std::exp(s)});
}

} // namespace

std::vector<CheckResult> run_selftest(const FuchsianRep& rep, std::uint64_t seed, int workers) {
    Sampler rnd(seed);
    std::vector<CheckResult> out;

    {
        FuchsianRep copy = rep;
        Tracker t("relation_residual", 1e-9);
        try {
            check_relation(copy);
            t.add(copy.relation_residual);
        } catch (const Error&) {
            t.add(copy.relation_residual);
        }
        out.push_back(t.done());
    }

    {
        Tracker cocycle("busemann_cocycle", 1e-9), anti("busemann_antisymmetry", 1e-9),
            equi("busemann_equivariance", 1e-9);
        for (int i = 0; i < 10000; ++i) {
            Point x = rnd.point(), y = rnd.point(), z = rnd.point();
            BoundaryPoint xi = rnd.boundary();
            double bxz = busemann(xi, x, z), bxy = busemann(xi, x, y), byz = busemann(xi, y, z);
            cocycle.add(std::fabs(bxz - bxy - byz) / std::max(1.0, std::fabs(bxz)));
            anti.add(std::fabs(bxy + busemann(xi, y, x)));
            Mat2 g = rnd.isometry();
            double moved = busemann(mobius_apply(g, xi), mobius_apply(g, x), mobius_apply(g, y));
            equi.add(std::fabs(moved - bxy) / std::max(1.0, std::fabs(bxy)));
        }
        out.push_back(cocycle.done());
        out.push_back(anti.done());
        out.push_back(equi.done());
    }

    {
        Tracker t("busemann_finite_approximant", 1e-6);
        for (int i = 0; i < 1000; ++i) {
            Point p = rnd.point(), q = rnd.point();
            if (hyp_distance(p, q) > 3.0) continue;
            BoundaryPoint xi = rnd.boundary();
            t.add(std::fabs(busemann_finite(ray_point(p, xi, 20.0), q, p) - busemann(xi, q, p)));
        }
        out.push_back(t.done());
    }

    {
        Tracker t("conformal_density", 1e-8);
        for (int i = 0; i < 1000; ++i) t.add(conformal_derivative_check(rnd.point(), rnd.point(), rnd.boundary()).err);
        out.push_back(t.done());
    }

    {
        Tracker t("canonical_class_invariance", 0.5);
        for (int i = 0; i < 200; ++i) {
            Word w = cyclically_reduce(rnd.reduced_word(rep, rnd.integer(2, 7)));
            if (w.empty()) continue;
            Word u = rnd.reduced_word(rep, rnd.integer(1, 4));
            Isometry c1 = canonical_element(rep, word_to_matrix(rep, w));
            Isometry c2 = canonical_element(rep, word_to_matrix(rep, u * w * u.inverse()));
            t.add(fuzzy_equal(c1, c2) ? 0.0 : 1.0);
        }
        out.push_back(t.done());
    }

    {
        Tracker t("pair_measure_invariance", 1e-4);
        OrbitBall ball = enumerate_ball(rep, 6.0, workers);
        PairMeasureGrid grid;
        for (int i = 0; i < 20; ++i) {
            const Isometry& g = ball.elements[static_cast<std::size_t>(rnd.integer(1, static_cast<int>(ball.elements.size()) - 1))];
            double a0 = rnd.uniform(0.0, kTwoPi);
            BoundaryArc A{a0, rnd.uniform(0.05, 1.0)};
            BoundaryArc B{a0 + A.length + rnd.uniform(0.05, 2.0), rnd.uniform(0.05, 1.0)};
            B.start = std::fmod(B.start, kTwoPi);
            double m0 = barmu_mass(grid, A, B).value;
            double m1 = barmu_mass(grid, A.image(g), B.image(g)).value;
            t.add(std::fabs(m1 / m0 - 1.0));
        }
        out.push_back(t.done());
    }

    {
        Tracker t("spectrum_oracle", 0.5);
        double systole = 2.0 * std::acosh(std::fabs(rep.gen(0).trace()) / 2.0);
        double t_max = 1.5 * systole;
        LengthSpectrum spec = conjugacy_spectrum(rep, t_max, workers);
        BruteSpectrum brute = brute_force_spectrum(rep, t_max);
        bool same = brute.stable && brute.classes.size() == spec.entries.size();
        for (std::size_t k = 0; same && k < spec.entries.size(); ++k)
            same = std::fabs(brute.classes[k].length - spec.entries[k].length) < 1e-9;
        if (same && !spec.entries.empty()) same = std::fabs(spec.entries.front().length - systole) < 1e-9;
        t.add(same ? 0.0 : 1.0);
        out.push_back(t.done());
    }
    return out;
}

} // namespace geolab
