#pragma once

#include <cstddef>
#include <vector>

#include "geolab/core.hpp"
#include "geolab/fuchsian.hpp"

namespace geolab {

// Slow reference implementations used by the self-test and the acceptance
// suite.  They share no traversal code with enumerate_ball/conjugacy_spectrum.

// Breadth-first search of the Cayley graph kept inside the displacement ball,
// deduplicated through a MatrixSet.
std::vector<Mat2> bfs_ball(const FuchsianRep& rep, double radius);

// Axis meets the closed polygon iff the vertices are not all strictly on one
// side of it.
bool axis_meets_polygon(const FuchsianRep& rep, const Mat2& g, double tol = 1e-9);

struct BruteClass {
    double length = 0.0;
    std::vector<Mat2> members; // conjugates whose axis meets the polygon
};

struct BruteSpectrum {
    double t_max = 0.0;
    std::vector<BruteClass> classes; // sorted by length
    std::size_t ball_size = 0;
    // The candidate set is unchanged when the search radius grows by one.
    bool stable = false;
};

// Classes are components of "h c h^{-1} = c'" over h with
// d(o, h o) <= 2 r_circ + t_max/2, which suffices for axes meeting the polygon.
BruteSpectrum brute_force_spectrum(const FuchsianRep& rep, double t_max);

} // namespace geolab
