#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "geolab/core.hpp"
#include "geolab/fuchsian.hpp"
#include "geolab/word.hpp"

namespace geolab {

// Node of the descent tree: element = gen(path[depth-1]) * ... * gen(path[0]).
struct BallNode {
    Mat2 element;
    Point image; // element applied to the centre
    const Letter* path = nullptr;
    int depth = 0;

    Word word() const;
};

// Reverse search over the orbit ball {g : d(o, g o) <= R}.  Every orbit point
// outside the polygon has a unique descent letter (descent_letter), so the ball
// is a tree rooted at the identity and is walked depth-first without any
// deduplication.  Subtrees are rooted at depth 3 (subtree 0 holds depths 0-2)
// and may be visited concurrently; inside one subtree the visit order is fixed.
class BallTraversal {
public:
    BallTraversal(const FuchsianRep& rep, double radius);

    std::size_t subtree_count() const { return seeds_.size() + 1; }
    double radius() const { return radius_; }

    // visit(subtree, node) returns false to abandon the traversal.
    using Visitor = std::function<bool(std::size_t, const BallNode&)>;
    // Returns false if some visit asked to stop.
    bool run(int workers, const Visitor& visit) const;

private:
    struct Seed {
        Mat2 element;
        std::vector<Letter> path;
    };
    bool walk(std::size_t subtree, const Seed& seed, const Visitor& visit) const;
    bool accept(const Mat2& child, Letter s, double parent_cosh) const;

    const FuchsianRep& rep_;
    double radius_;
    double cosh_radius_;
    std::vector<Seed> shallow_; // depths 0-2
    std::vector<Seed> seeds_;   // depth 3
};

struct OrbitBall {
    double radius = 0.0;
    std::vector<Isometry> elements; // sorted by displacement, then word
    bool complete = true;
};

class BallCapExceeded : public Error {
public:
    explicit BallCapExceeded(OrbitBall partial);
    const OrbitBall& partial() const { return partial_; }

private:
    OrbitBall partial_;
};

// cap = 0 means unlimited.
OrbitBall enumerate_ball(const FuchsianRep& rep, double radius, int workers = 1, std::size_t cap = 0);

// N(R) = #{g : d(base, g base) <= R} for each radius, without storing elements.
std::vector<std::uint64_t> ball_counts(const FuchsianRep& rep, const std::vector<double>& radii, int workers = 1,
                                       Point base = {0.0, 1.0});

struct SpectrumEntry {
    double length = 0.0;
    ConjClass cls;
    ConjClass root;
    int d = 1;
    BoundaryPoint xi_minus;
    BoundaryPoint xi_plus;
    // Canonical element of the class (its axis meets the polygon).
    Isometry representative;
    // True for the smaller of the pair {class, inverse class}; exactly one of
    // the two is the leader since no hyperbolic element is conjugate to its
    // inverse in a torsion-free group.
    bool orientation_leader = true;
};

struct LengthSpectrum {
    double t_max = 0.0;
    std::vector<SpectrumEntry> entries; // sorted by length, then class word
    bool complete = true;
};

class SpectrumCapExceeded : public Error {
public:
    explicit SpectrumCapExceeded(LengthSpectrum partial);
    const LengthSpectrum& partial() const { return partial_; }

private:
    LengthSpectrum partial_;
};

// Displacement bound for elements whose axis meets the closed polygon:
// sinh(d(o, g o)/2) = cosh(dist(o, axis)) sinh(|g|/2) <= cosh(r_circ) sinh(t/2).
double spectrum_radius(const FuchsianRep& rep, double t_max);

// Oriented conjugacy classes with translation length in (0, t_max].  cap bounds
// the number of visited ball elements (0 = unlimited).
LengthSpectrum conjugacy_spectrum(const FuchsianRep& rep, double t_max, int workers = 1, std::size_t cap = 0);

// Histogram of d over classes with length in (t - eps, t].
std::map<int, std::size_t> multiplicity_profile(const LengthSpectrum& spec, double t, double eps);

// 17 significant digits; optional comment line first.
void write_spectrum_csv(std::ostream& out, const LengthSpectrum& spec, const std::string& comment = "");
std::string format_double(double v);

} // namespace geolab
