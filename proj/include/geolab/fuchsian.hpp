#pragma once

#include <utility>
#include <vector>

#include "geolab/core.hpp"
#include "geolab/word.hpp"

namespace geolab {

// Side-pairing representation of the closed genus-g surface group on the
// regular 4g-gon centred at i with interior angles 2*pi/(4g).
struct FuchsianRep {
    int genus = 2;
    // Indexed by Letter code: generators[2k] = x_k, generators[2k+1] = x_k^{-1}.
    std::vector<Isometry> generators;
    Word relator;
    double relation_residual = 0.0;
    double inradius = 0.0;
    double circumradius = 0.0;
    double fundamental_domain_diameter = 0.0;
    Point center{0.0, 1.0};
    std::vector<Point> vertices;         // counterclockwise
    std::vector<Point> neighbor_centers; // generators[l] applied to the centre

    int letter_count() const { return static_cast<int>(generators.size()); }
    const Mat2& gen(Letter l) const { return generators[l]; }
    double area() const;
};

FuchsianRep build_fuchsian_rep(int genus);

// Recomputes the relator residual from the stored generators and throws
// RelationResidual above 1e-9.
void check_relation(FuchsianRep& rep);

Isometry word_to_matrix(const FuchsianRep& rep, const Word& w);

// cosh of the distance from the polygon centre i.
inline double cosh_dist_center(const Point& z) { return (z.x * z.x + z.y * z.y + 1.0) / (2.0 * z.y); }

// Letter l whose neighbour centre gen(l)(i) is strictly closer to z than i is,
// choosing the closest (ties to the smaller code); -1 when z lies in the closed
// polygon.  This is the single descent rule shared by enumeration and reduction.
int descent_letter(const FuchsianRep& rep, const Point& z);

struct PointReduction {
    Word word;    // z = word_to_matrix(word)(reduced)
    Mat2 element; // matrix of word
    Point reduced;
};
PointReduction reduce_point(const FuchsianRep& rep, const Point& z);

// Membership of an isometry in the group; on success fills the word.
bool in_group(const FuchsianRep& rep, const Mat2& g, Word* word = nullptr, double rel_tol = 1e-7);

// True when the axis of the hyperbolic g passes within sinh-distance tol of
// the closed polygon.
bool axis_meets_domain(const FuchsianRep& rep, const Mat2& g, double tol = tol::algebraic);

// Conjugates of g whose axis meets the polygon (one per element), found by
// single-generator conjugation from a member.  If g itself is not a member the
// search starts from the conjugate through the tile containing the foot of the
// centre on the axis.
std::vector<Isometry> axis_conjugates(const FuchsianRep& rep, const Isometry& g);
std::vector<Mat2> axis_conjugate_matrices(const FuchsianRep& rep, const Mat2& g);
// Uses the attached word, when present, to move g next to the polygon; stays
// accurate for elements far from the identity.
std::vector<Mat2> axis_conjugate_matrices(const FuchsianRep& rep, const Isometry& g);

// Attaches the reduction word; throws InvalidArgument for non-members.
Isometry with_word(const FuchsianRep& rep, const Mat2& g);

// Fuzzy-lexicographic minimum of axis_conjugates; a class invariant.
Isometry canonical_element(const FuchsianRep& rep, const Isometry& g);

struct ElementRoot {
    Isometry root;
    int d = 1;
};
// Largest d with g = beta^d for beta in the group.
ElementRoot element_root(const FuchsianRep& rep, const Isometry& g);

// (translation length, (repelling, attracting)) of word_to_matrix(c).
std::pair<double, std::pair<BoundaryPoint, BoundaryPoint>> class_geometry(const FuchsianRep& rep,
                                                                          const ConjClass& c);

// Length of the geodesic (xi, eta) inside the closed polygon (0 if it misses).
double chord_in_domain(const FuchsianRep& rep, const BoundaryPoint& xi, const BoundaryPoint& eta);

} // namespace geolab
