#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geolab/core.hpp"
#include "geolab/fuchsian.hpp"
#include "geolab/spectrum.hpp"

namespace geolab {

// Closed arc of the boundary circle running counterclockwise from `start`
// through `length` radians of Cayley angle.
struct BoundaryArc {
    double start = 0.0;
    double length = 0.0;

    static BoundaryArc from_endpoints(double a, double b); // counterclockwise a -> b
    double end() const;
    double mid() const;
    // Counterclockwise offset of an angle from start, in [0, 2pi).
    double offset(double angle) const;
    bool contains(double angle, double tol = 0.0) const;
    bool contains(const BoundaryPoint& x, double tol = 0.0) const { return contains(x.angle(), tol); }
    bool subset_of(const BoundaryArc& o) const;
    bool intersects(const BoundaryArc& o) const;
    // Arcs shorter than pi meet in at most one arc.
    std::optional<BoundaryArc> intersect(const BoundaryArc& o) const;
    // Image under a Mobius map (orientation preserving on the circle).
    BoundaryArc image(const Mat2& g) const;
};

struct FlowBoxSpec {
    Point p{0.0, 1.0};
    UnitVector v0{{0.0, 1.0}, 1.5707963267948966};
    double theta = 0.05;
    double eps = 0.1;
    double alpha = 0.1;

    static FlowBoxSpec make(const Point& p, double direction, double theta, double eps, double alpha);
};

struct BoxArcs {
    BoundaryArc P; // backward endpoints of the theta-cone at p around v0
    BoundaryArc F; // forward endpoints
};
// ApertureTooLarge when the arcs would touch (theta >= pi/2).
BoxArcs arcs(const FlowBoxSpec& spec);

// b_{v^-}(pi v, p).
double s_coordinate(const FlowBoxSpec& spec, const UnitVector& v);

// Poisson kernel (1 - |w|^2)/|e^{i angle} - w|^2 of the disk point of z.
double poisson_kernel(const Point& z, double angle);
// Density of the visual probability measure mu_z against Cayley angle.
double visual_density(const Point& z, double angle);

// b_xi(g p, p) for xi at the given Cayley angle.
double b_gamma(const Point& p, const Mat2& g, double angle);

// gF inside F and g^{-1}P inside P.
bool gamma_star_member(const FlowBoxSpec& spec, const Mat2& g);
bool gamma_star_member(const BoxArcs& arcs, const Mat2& g);

// Exact test of S meeting phi^{-t} g B^alpha: some xi in P cap gP has
// b_xi^g in [t - alpha, t + eps^2], and F cap gF is nonempty.  Decided by
// branch and bound on a Lipschitz bound of xi -> b_xi^g.
bool gamma_t_alpha_member(const FlowBoxSpec& spec, const Mat2& g, double t, double alpha);
bool gamma_t_alpha_member(const FlowBoxSpec& spec, const Mat2& g, double t);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};
// Enclosure of xi -> b_xi^g over an arc: sampled extremes widened by the
// Lipschitz bound of the sampling gap.
Interval b_gamma_range(const Point& p, const Mat2& g, const BoundaryArc& arc, int samples = 64);
// Largest |b_xi^g - b_eta^g| over `samples` equally spaced points of P.
double b_gamma_oscillation(const FlowBoxSpec& spec, const Mat2& g, int samples = 65);
// Every xi in P satisfies the window condition with (t + 2 eps^2, alpha + 4 eps^2)
// on all of [0, eps^2]: b_xi^g in [t - alpha - eps^2, t + 2 eps^2].
bool full_branch(const FlowBoxSpec& spec, const Mat2& g, double t, double alpha);

// Largest distance from p to a footpoint of B (sampled over P x F x {0, alpha}
// on a 17 x 17 grid, plus a small margin).
double box_footprint_radius(const FlowBoxSpec& spec);
// Largest sampled distance between footpoints of B.
double box_footprint_diameter(const FlowBoxSpec& spec);
// Orbit-ball radius around p that contains Gamma(t, alpha) for this box.
// Balls about the centre o need 2 d(o, p) more; see sweep_ball_radius.
double required_ball_radius(const FlowBoxSpec& spec, double t);
double sweep_ball_radius(const FuchsianRep& rep, const std::vector<FlowBoxSpec>& boxes, double t);

struct GammaCounts {
    std::size_t gamma = 0;      // Gamma(t, alpha)
    std::size_t gamma_star = 0; // Gamma*(t, alpha)
    std::size_t gamma_prime = 0; // primitive members of Gamma*
};

struct GammaRecord {
    Isometry g;
    double length = 0.0;
    bool in_gamma = false;
    bool in_gamma_star = false;
    bool in_gamma_prime = false;
    bool window_ok = true;  // period window for Gamma* members
    bool endpoints_ok = true; // xi^- in P and xi^+ in F for Gamma* members
};

// Filters an orbit ball about the polygon centre o; ball.radius must be at
// least required_ball_radius + 2 d(o, p), else InsufficientRadius.
std::vector<GammaRecord> sweep_gamma_sets(const FuchsianRep& rep, const FlowBoxSpec& spec, const OrbitBall& ball,
                                          double t, double alpha);
GammaCounts count_gamma_sets(const FuchsianRep& rep, const FlowBoxSpec& spec, const OrbitBall& ball, double t,
                             double alpha);

struct ConformalCheck {
    double lhs = 0.0; // d mu_q / d mu_p at xi from the Poisson kernels
    double rhs = 0.0; // e^{-b_xi(q, p)}
    double err = 0.0; // |lhs/rhs - 1|
};
ConformalCheck conformal_derivative_check(const Point& p, const Point& q, const BoundaryPoint& xi);

// Quadrature settings for the pair measure e^{beta_p} mu_p x mu_p.
struct PairMeasureGrid {
    Point p{0.0, 1.0};
    double rel_tol = 1e-10;
    int max_depth = 12;
};

struct MassEstimate {
    double value = 0.0;
    double error = 0.0; // absolute
};
// OverlappingArcs if the arcs meet.
MassEstimate barmu_mass(const PairMeasureGrid& grid, const BoundaryArc& A, const BoundaryArc& B);

// Total mass of m = barmu x ds on SM when mu_p is the visual probability
// measure: m = Liouville/(2 pi^2), so m(SM) = 4(g - 1) and the orbit count
// of a ball of radius T is ~ e^T / m(SM).
double measure_total(const FuchsianRep& rep);
// m(B^alpha) = alpha * barmu(P x F).
double box_measure(const PairMeasureGrid& grid, const FlowBoxSpec& spec, double alpha);

struct ScalingReport {
    double numerator = 0.0;   // eps^2 barmu(P x gF)
    double denominator = 0.0; // e^{-|g|} eps^2 barmu(P x F)
    double ratio = 0.0;
    double quad_error = 0.0;  // relative
    bool in_band = false;     // ratio in [e^{-2 eps}, e^{2 eps}]
};
ScalingReport scaling_check(const FlowBoxSpec& spec, const PairMeasureGrid& grid, const Mat2& g);

// Boxes at p with directions phi0 + 2 theta k, k = 0..n-1 (n = floor(pi/theta)
// when count <= 0): pairwise disjoint in SX, each satisfying the same gates.
std::vector<FlowBoxSpec> box_family(const Point& p, double phi0, double theta, double eps, double alpha,
                                    int count = 0);

struct MixingPoint {
    double t = 0.0;
    std::size_t gamma_star = 0; // pooled over the family
    std::size_t gamma = 0;
    double R_star = 0.0; // #Gamma* e^{-t} / (m(B)/m(SM)), pooled
    double R = 0.0;
};
struct MixingSeries {
    std::vector<MixingPoint> points;
    double alpha = 0.0;
    double eps = 0.0;
    double pooled_measure = 0.0; // sum of m(B) over the family, normalized by m(SM)
    double band_lo = 0.0;        // e^{-4 eps}
    double band_hi = 0.0;        // e^{4 eps}(1 + 4 eps^2/alpha)
};
MixingSeries mixing_ratio_curve(const FuchsianRep& rep, const std::vector<FlowBoxSpec>& family, const OrbitBall& ball,
                                const std::vector<double>& t_grid, double alpha);

struct PiSandwich {
    std::size_t pi_hat = 0;       // elements with xi^- in P, xi^+ in F, |g| in (t - eps, t]
    std::size_t gamma_prime_lower = 0; // #Gamma'(t - 2eps^2, eps - 4eps^2)
    std::size_t gamma_upper = 0;  // #Gamma(t, eps)
    std::size_t multiplicity_sum = 0; // sum of d over Gamma_2(P, F, t)
    std::size_t gamma_two = 0;        // #Gamma_2(P, F, t)
    bool lower_ok = false;
    bool upper_ok = false;
    // Largest number of Pi-hat elements in one conjugacy class, i.e. box
    // crossings of one closed geodesic (diagnostic).
    std::size_t max_class_share = 0;
};
PiSandwich pi_sandwich_check(const FuchsianRep& rep, const FlowBoxSpec& spec, const OrbitBall& ball, double t);

struct ContinuityGate {
    double variation = 0.0; // max relative change of barmu(P_rho x F_rho), |rho - theta| <= delta
    bool pass = false;
};
ContinuityGate continuity_gate(const FlowBoxSpec& spec, const PairMeasureGrid& grid, double delta = 1e-5,
                               double rel_limit = 1e-3);

// Boundary-pair statistics on a bins x bins grid of Cayley angles.
struct PairHistogram {
    int bins = 16;
    std::vector<double> mass; // row-major [i * bins + j], i for xi^-, j for xi^+
};
// Reference: barmu restricted to geodesics weighted by their chord in the
// polygon (unit vectors over the fundamental domain), normalized.
PairHistogram reference_pair_histogram(const FuchsianRep& rep, int bins);
// Every lift meeting the polygon of every class with length in (t - eps, t],
// weighted by chord/length; classes weighted equally.
PairHistogram empirical_pair_histogram(const FuchsianRep& rep, const LengthSpectrum& spec, double t, double eps,
                                       int bins);
double total_variation(const PairHistogram& a, const PairHistogram& b);

struct EquidistPoint {
    double t = 0.0;
    std::size_t classes = 0;
    double tv = 0.0;
};
std::vector<EquidistPoint> endpoint_equidistribution(const FuchsianRep& rep, const LengthSpectrum& spec,
                                                     const std::vector<double>& t_grid, double eps, int bins);

// Fraction of time the classes with length in (t - eps, t] spend with
// footpoint in the disc of radius r about the centre, against the m-share
// of that set (cosh r - 1)/(2(g - 1)); r must not exceed the inradius.
struct OccupationPoint {
    double empirical = 0.0;
    double reference = 0.0;
};
OccupationPoint disc_occupation(const FuchsianRep& rep, const LengthSpectrum& spec, double t, double eps, double r);

} // namespace geolab
