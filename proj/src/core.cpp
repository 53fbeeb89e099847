#include "geolab/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace geolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}
} // namespace

const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::EqualEndpoints: return "EqualEndpoints";
    case ErrorKind::TrivialClass: return "TrivialClass";
    case ErrorKind::InvalidGenus: return "InvalidGenus";
    case ErrorKind::RelationResidual: return "RelationResidual";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::GridMisaligned: return "GridMisaligned";
    case ErrorKind::ApertureTooLarge: return "ApertureTooLarge";
    case ErrorKind::OverlappingArcs: return "OverlappingArcs";
    case ErrorKind::InsufficientRadius: return "InsufficientRadius";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

bool Point::valid() const { return std::isfinite(x) && std::isfinite(y) && y > 0; }

BoundaryPoint BoundaryPoint::finite(double x) {
    BoundaryPoint b;
    b.x_ = x;
    return b;
}

BoundaryPoint BoundaryPoint::infinity() {
    BoundaryPoint b;
    b.inf_ = true;
    return b;
}

BoundaryPoint BoundaryPoint::from_angle(double angle) {
    angle = wrap_angle(angle);
    if (angle == 0.0) return infinity();
    // x = -cot(angle/2)
    double h = 0.5 * angle;
    return finite(-std::cos(h) / std::sin(h));
}

BoundaryPoint BoundaryPoint::projective(double u, double v) {
    if (v == 0.0) return infinity();
    double x = u / v;
    if (!std::isfinite(x)) return infinity();
    return finite(x);
}

double BoundaryPoint::angle() const {
    if (inf_) return 0.0;
    // arg((x - i)^2) = 2 arg(x - i)
    return wrap_angle(2.0 * std::atan2(-1.0, x_));
}

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol) {
    double d = std::fabs(a.angle() - b.angle());
    d = std::min(d, kTwoPi - d);
    return d <= tol;
}

double Mat2::max_abs() const {
    return std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)});
}

Mat2 Mat2::normalized() const {
    double thr = 1e-12 * std::max(1.0, max_abs());
    double lead = 0.0;
    for (double v : {a, b, c}) {
        if (std::fabs(v) > thr) {
            lead = v;
            break;
        }
    }
    if (lead < 0) return {-a, -b, -c, -d};
    return *this;
}

double distance_to_identity(const Mat2& g) {
    double plus = std::max({std::fabs(g.a - 1), std::fabs(g.b), std::fabs(g.c), std::fabs(g.d - 1)});
    double minus = std::max({std::fabs(g.a + 1), std::fabs(g.b), std::fabs(g.c), std::fabs(g.d + 1)});
    return std::min(plus, minus);
}

Mat2 robust_sign(const Mat2& g) {
    double m = g.max_abs();
    for (double v : {g.a, g.b, g.c, g.d}) {
        if (std::fabs(v) >= 0.3183 * m) return v < 0 ? Mat2{-g.a, -g.b, -g.c, -g.d} : g;
    }
    return g;
}

int fuzzy_compare(const Mat2& g, const Mat2& h, double rel_tol) {
    Mat2 x = robust_sign(g), y = robust_sign(h);
    double tol = rel_tol * std::max({1.0, x.max_abs(), y.max_abs()});
    const double xs[4] = {x.a, x.b, x.c, x.d};
    const double ys[4] = {y.a, y.b, y.c, y.d};
    for (int i = 0; i < 4; ++i) {
        if (std::fabs(xs[i] - ys[i]) > tol) return xs[i] < ys[i] ? -1 : 1;
    }
    return 0;
}

Isometry Isometry::make(double a, double b, double c, double d) {
    Isometry g(Mat2{a, b, c, d}.normalized());
    if (!g.valid()) throw Error(ErrorKind::InvalidArgument, "isometry needs ad - bc = 1");
    return g;
}

Isometry Isometry::inverse() const {
    Isometry r(Mat2::inverse().normalized());
    if (word) r.word = word->inverse();
    return r;
}

Isometry Isometry::operator*(const Isometry& o) const {
    Isometry r((static_cast<const Mat2&>(*this) * static_cast<const Mat2&>(o)).normalized());
    if (word && o.word) r.word = *word * *o.word;
    return r;
}

bool Isometry::valid() const {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d) &&
           std::fabs(det() - 1.0) <= tol::determinant * std::max(1.0, max_abs() * max_abs());
}

GeodesicLine::GeodesicLine(const BoundaryPoint& f, const BoundaryPoint& t) : from(f), to(t) {
    if (same_boundary_point(f, t, 1e-15)) throw Error(ErrorKind::EqualEndpoints, "geodesic endpoints coincide");
}

UnitVector UnitVector::normalized() const { return {base, wrap_angle(direction)}; }

const char* to_string(IsometryType t) {
    switch (t) {
    case IsometryType::Hyperbolic: return "hyperbolic";
    case IsometryType::Parabolic: return "parabolic";
    case IsometryType::Elliptic: return "elliptic";
    case IsometryType::Identity: return "identity";
    }
    return "unknown";
}

Point mobius_apply(const Mat2& g, const Point& z) {
    double nx = g.a * z.x + g.b, ny = g.a * z.y;
    double dx = g.c * z.x + g.d, dy = g.c * z.y;
    double den = dx * dx + dy * dy;
    return {(nx * dx + ny * dy) / den, (ny * dx - nx * dy) / den};
}

BoundaryPoint mobius_apply(const Mat2& g, const BoundaryPoint& z) {
    if (z.is_infinite()) return BoundaryPoint::projective(g.a, g.c);
    return BoundaryPoint::projective(g.a * z.x() + g.b, g.c * z.x() + g.d);
}

double mobius_derivative_abs(const Mat2& g, double x) {
    double den = g.c * x + g.d;
    return 1.0 / (den * den);
}

double cosh_distance(const Point& p, const Point& q) {
    double dx = p.x - q.x, dy = p.y - q.y;
    return 1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y);
}

double hyp_distance(const Point& p, const Point& q) {
    double dx = p.x - q.x, dy = p.y - q.y;
    return 2.0 * std::asinh(std::sqrt(dx * dx + dy * dy) / (2.0 * std::sqrt(p.y * q.y)));
}

IsometryType classify(const Mat2& g) {
    double tr = std::fabs(g.trace());
    if (std::fabs(tr - 2.0) <= tol::algebraic) {
        Mat2 s = g.trace() < 0 ? Mat2{-g.a, -g.b, -g.c, -g.d} : g;
        if (std::fabs(s.a - s.d) <= tol::algebraic && std::fabs(s.b) <= tol::algebraic &&
            std::fabs(s.c) <= tol::algebraic)
            return IsometryType::Identity;
        return IsometryType::Parabolic;
    }
    return tr > 2.0 ? IsometryType::Hyperbolic : IsometryType::Elliptic;
}

double translation_length(const Mat2& g) {
    if (classify(g) != IsometryType::Hyperbolic)
        throw Error(ErrorKind::NotHyperbolic, "translation length needs a hyperbolic isometry");
    return 2.0 * std::acosh(0.5 * std::fabs(g.trace()));
}

std::pair<BoundaryPoint, BoundaryPoint> axis_endpoints(const Mat2& g0) {
    if (classify(g0) != IsometryType::Hyperbolic)
        throw Error(ErrorKind::NotHyperbolic, "axis needs a hyperbolic isometry");
    Mat2 g = g0.trace() < 0 ? Mat2{-g0.a, -g0.b, -g0.c, -g0.d} : g0;
    double tr = g.trace();
    double disc = std::sqrt((tr - 2.0) * (tr + 2.0));
    double lam = 0.5 * (tr + disc);
    double mu = 1.0 / lam;
    auto fixed = [&](double e) {
        // eigenvector of eigenvalue e, choosing the better conditioned row
        double u1 = g.b, v1 = e - g.a;
        double u2 = e - g.d, v2 = g.c;
        if (std::hypot(u1, v1) >= std::hypot(u2, v2)) return BoundaryPoint::projective(u1, v1);
        return BoundaryPoint::projective(u2, v2);
    };
    return {fixed(mu), fixed(lam)};
}

double busemann(const BoundaryPoint& xi, const Point& q, const Point& p) {
    if (xi.is_infinite()) return std::log(p.y / q.y);
    double dq = (q.x - xi.x()) * (q.x - xi.x()) + q.y * q.y;
    double dp = (p.x - xi.x()) * (p.x - xi.x()) + p.y * p.y;
    return std::log((dq * p.y) / (q.y * dp));
}

double busemann_finite(const Point& x, const Point& q, const Point& p) {
    return hyp_distance(q, x) - hyp_distance(p, x);
}

double gromov_beta(const Point& p, const BoundaryPoint& xi, const BoundaryPoint& eta) {
    if (same_boundary_point(xi, eta, 1e-15)) throw Error(ErrorKind::EqualEndpoints, "beta needs distinct endpoints");
    auto sq = [&](double x) { return (p.x - x) * (p.x - x) + p.y * p.y; };
    double y2 = p.y * p.y;
    if (xi.is_infinite()) return std::log(sq(eta.x()) / y2);
    if (eta.is_infinite()) return std::log(sq(xi.x()) / y2);
    double d = xi.x() - eta.x();
    return std::log((sq(xi.x()) / (p.y * std::fabs(d))) * (sq(eta.x()) / (p.y * std::fabs(d))));
}

double axis_signed_sinh_distance(const Mat2& g0, const Point& z) {
    Mat2 g = g0.trace() < 0 ? Mat2{-g0.a, -g0.b, -g0.c, -g0.d} : g0;
    double tr = g.trace();
    double norm = std::sqrt((tr - 2.0) * (tr + 2.0));
    return (g.c * (z.x * z.x + z.y * z.y) + (g.d - g.a) * z.x - g.b) / (z.y * norm);
}

Mat2 frame(const UnitVector& v) {
    double s = std::sqrt(v.base.y);
    Mat2 affine{s, v.base.x / s, 0.0, 1.0 / s};
    double h = 0.5 * (v.direction - 0.5 * std::numbers::pi);
    Mat2 rot{std::cos(h), std::sin(h), -std::sin(h), std::cos(h)};
    return affine * rot;
}

UnitVector from_frame(const Mat2& g) {
    Point base = mobius_apply(g, Point{0.0, 1.0});
    // g'(i) = 1/(c i + d)^2
    double arg = -2.0 * std::atan2(g.c, g.d);
    return UnitVector{base, 0.5 * std::numbers::pi + arg}.normalized();
}

UnitVector geodesic_flow(const UnitVector& v, double t) {
    Mat2 shift{std::exp(0.5 * t), 0.0, 0.0, std::exp(-0.5 * t)};
    return from_frame(frame(v) * shift);
}

BoundaryPoint forward_endpoint(const UnitVector& v) {
    Mat2 f = frame(v);
    return BoundaryPoint::projective(f.a, f.c);
}

BoundaryPoint backward_endpoint(const UnitVector& v) {
    Mat2 f = frame(v);
    return BoundaryPoint::projective(f.b, f.d);
}

Mat2 translation_along(const UnitVector& v, double t) {
    Mat2 f = frame(v);
    Mat2 shift{std::exp(0.5 * t), 0.0, 0.0, std::exp(-0.5 * t)};
    return f * shift * f.inverse();
}

DiskPoint cayley(const Point& z) {
    double dx = z.x, dy = z.y + 1.0;
    double den = dx * dx + dy * dy;
    // (x + i(y-1)) / (x + i(y+1))
    double nre = z.x, nim = z.y - 1.0;
    DiskPoint w;
    w.re = (nre * dx + nim * dy) / den;
    w.im = (nim * dx - nre * dy) / den;
    w.one_minus_r2 = 4.0 * z.y / den;
    return w;
}

} // namespace geolab
