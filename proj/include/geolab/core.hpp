#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "geolab/word.hpp"

namespace geolab {

namespace tol {
inline constexpr double algebraic = 1e-9;
inline constexpr double limit = 1e-6;
inline constexpr double determinant = 1e-12;
} // namespace tol

enum class ErrorKind {
    NotHyperbolic,
    EqualEndpoints,
    TrivialClass,
    InvalidGenus,
    RelationResidual,
    ResourceCap,
    OutOfRange,
    DegenerateFit,
    GridMisaligned,
    ApertureTooLarge,
    OverlappingArcs,
    InsufficientRadius,
    QuadratureFailure,
    InvalidArgument,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct Point {
    double x = 0.0;
    double y = 1.0;

    bool valid() const;
};

class BoundaryPoint {
public:
    BoundaryPoint() = default;
    static BoundaryPoint finite(double x);
    static BoundaryPoint infinity();
    // Cayley angle: w = (x - i)/(x + i) = e^{i angle}; infinity sits at angle 0.
    static BoundaryPoint from_angle(double angle);
    // Projective point [u : v].
    static BoundaryPoint projective(double u, double v);

    bool is_infinite() const { return inf_; }
    double x() const { return x_; }
    double angle() const;

private:
    bool inf_ = false;
    double x_ = 0.0;
};

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol = tol::algebraic);

// Plain 2x2 matrix used on hot paths; Isometry adds word provenance.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Mat2 identity() { return {}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 inverse() const { return {d, -b, -c, a}; }
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    double max_abs() const;
    // First entry of (a, b, c) that is not negligible is made positive.
    Mat2 normalized() const;
};

// Residual of g against +-identity in the max norm.
double distance_to_identity(const Mat2& g);

// Sign fixed by the first entry carrying a sizeable share of the norm; stable
// under rounding noise in near-zero entries.
Mat2 robust_sign(const Mat2& g);

// Entrywise comparison of sign-normalized representatives with a tolerance
// scaled to the matrix size; -1, 0, 1.
int fuzzy_compare(const Mat2& g, const Mat2& h, double rel_tol = 1e-8);
inline bool fuzzy_equal(const Mat2& g, const Mat2& h, double rel_tol = 1e-8) {
    return fuzzy_compare(g, h, rel_tol) == 0;
}

struct Isometry : Mat2 {
    std::optional<Word> word;

    Isometry() = default;
    Isometry(const Mat2& m, std::optional<Word> w = std::nullopt) : Mat2(m), word(std::move(w)) {}
    static Isometry make(double a, double b, double c, double d);

    Isometry inverse() const;
    Isometry operator*(const Isometry& o) const;
    bool valid() const;
};

struct GeodesicLine {
    BoundaryPoint from;
    BoundaryPoint to;

    GeodesicLine(const BoundaryPoint& f, const BoundaryPoint& t);
};

struct UnitVector {
    Point base;
    double direction = 0.0; // Euclidean angle of the tangent in half-plane coordinates

    UnitVector normalized() const;
};

enum class IsometryType { Hyperbolic, Parabolic, Elliptic, Identity };
const char* to_string(IsometryType t);

Point mobius_apply(const Mat2& g, const Point& z);
BoundaryPoint mobius_apply(const Mat2& g, const BoundaryPoint& z);
// Derivative of the Mobius map at a finite point.
double mobius_derivative_abs(const Mat2& g, double x);

double cosh_distance(const Point& p, const Point& q);
double hyp_distance(const Point& p, const Point& q);

IsometryType classify(const Mat2& g);
double translation_length(const Mat2& g);
// (repelling, attracting)
std::pair<BoundaryPoint, BoundaryPoint> axis_endpoints(const Mat2& g);

double busemann(const BoundaryPoint& xi, const Point& q, const Point& p);
double busemann_finite(const Point& x, const Point& q, const Point& p);
double gromov_beta(const Point& p, const BoundaryPoint& xi, const BoundaryPoint& eta);

// Signed sinh-distance from z to the axis of a hyperbolic g (positive on the
// left of the axis oriented from repelling to attracting point).
double axis_signed_sinh_distance(const Mat2& g, const Point& z);

// Unit tangent bundle <-> PSL(2,R): frame(v) maps (i, upward) to v.
Mat2 frame(const UnitVector& v);
UnitVector from_frame(const Mat2& g);
UnitVector geodesic_flow(const UnitVector& v, double t);
BoundaryPoint forward_endpoint(const UnitVector& v);
BoundaryPoint backward_endpoint(const UnitVector& v);
// Hyperbolic translation along the geodesic through p with given direction.
Mat2 translation_along(const UnitVector& v, double t);

// Poincare disk coordinate of a half-plane point (Cayley transform).
struct DiskPoint {
    double re = 0.0;
    double im = 0.0;
    double one_minus_r2 = 1.0; // 1 - |w|^2 computed without cancellation
};
DiskPoint cayley(const Point& z);

} // namespace geolab
