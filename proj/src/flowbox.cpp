#include "geolab/flowbox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace geolab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

double map_angle(const Mat2& g, double angle) {
    return mobius_apply(g, BoundaryPoint::from_angle(angle)).angle();
}

struct DiskData {
    double re, im, abs;
};

DiskData disk_of(const Point& z) {
    DiskPoint w = cayley(z);
    return {w.re, w.im, std::hypot(w.re, w.im)};
}

// Bound on |d/d angle log Poisson(w, angle)| over an arc of width `width`
// around `mid`: the derivative is 2 Im(e^{i a} conj w)/|e^{i a} - w|^2, at
// most min(2/D, 2|w|/D^2) with D the distance from w to the arc.
double log_poisson_lipschitz(const DiskData& w, double mid, double width) {
    double dx = std::cos(mid) - w.re, dy = std::sin(mid) - w.im;
    double dist = std::hypot(dx, dy) - 2.0 * std::sin(std::min(width, kTwoPi) / 4.0);
    if (dist <= 0) return std::numeric_limits<double>::infinity();
    return std::min(2.0 / dist, 2.0 * w.abs / (dist * dist));
}

// xi -> b_xi(gp, p) with cached disk data.
struct BusemannGap {
    Point p, gp;
    DiskData wp, wg;
    double c0; // log((1 - |w_p|^2)/(1 - |w_gp|^2))

    BusemannGap(const Point& p_, const Mat2& g) : p(p_), gp(mobius_apply(g, p_)), wp(disk_of(p)), wg(disk_of(gp)) {
        c0 = std::log(cayley(p).one_minus_r2 / cayley(gp).one_minus_r2);
    }
    double operator()(double a) const {
        double c = std::cos(a), s = std::sin(a);
        double dp = (c - wp.re) * (c - wp.re) + (s - wp.im) * (s - wp.im);
        double dg = (c - wg.re) * (c - wg.re) + (s - wg.im) * (s - wg.im);
        return c0 + std::log(dg / dp);
    }
    double lipschitz(double mid, double width) const {
        return log_poisson_lipschitz(wp, mid, width) + log_poisson_lipschitz(wg, mid, width);
    }
};

// Is there an angle in the arc where f takes a value in [lo, hi]?
bool attains_window(const BusemannGap& f, const BoundaryArc& arc, double lo, double hi) {
    bool below = false, above = false;
    auto classify_value = [&](double v) {
        if (v >= lo && v <= hi) return true;
        if (v < lo) below = true;
        if (v > hi) above = true;
        // continuity on a connected arc
        return below && above;
    };
    if (classify_value(f(arc.start)) || classify_value(f(arc.start + arc.length))) return true;
    struct Piece {
        double a, len;
        int depth;
    };
    std::vector<Piece> work{{arc.start, arc.length, 0}};
    while (!work.empty()) {
        Piece pc = work.back();
        work.pop_back();
        double m = pc.a + 0.5 * pc.len;
        double v = f(m);
        if (classify_value(v)) return true;
        double r = f.lipschitz(m, pc.len) * 0.5 * pc.len;
        if (v + r < lo || v - r > hi) continue;
        if (pc.depth >= 60) {
            if (v >= lo - 1e-9 && v <= hi + 1e-9) return true;
            continue;
        }
        work.push_back({pc.a, 0.5 * pc.len, pc.depth + 1});
        work.push_back({m, 0.5 * pc.len, pc.depth + 1});
    }
    return false;
}

std::vector<double> sample_values(const BusemannGap& f, const BoundaryArc& arc, int samples) {
    std::vector<double> v;
    int n = std::max(2, samples);
    for (int k = 0; k < n; ++k) v.push_back(f(arc.start + arc.length * k / (n - 1)));
    return v;
}

Point footpoint(const Point& p, const BoundaryPoint& xi, const BoundaryPoint& eta, double s) {
    // send xi to infinity; the geodesic becomes vertical and b_inf(x, p') = log(p'.y / x.y)
    Mat2 h = xi.is_infinite() ? Mat2::identity() : Mat2{0.0, -1.0, 1.0, -xi.x()};
    Point ph = mobius_apply(h, p);
    BoundaryPoint eh = mobius_apply(h, eta);
    Point xh{eh.x(), ph.y * std::exp(-s)};
    return mobius_apply(h.inverse(), xh);
}

std::vector<Point> footpoint_samples(const FlowBoxSpec& spec) {
    BoxArcs a = arcs(spec);
    std::vector<Point> pts;
    const int n = 17;
    for (int i = 0; i < n; ++i) {
        BoundaryPoint xi = BoundaryPoint::from_angle(a.P.start + a.P.length * i / (n - 1));
        for (int j = 0; j < n; ++j) {
            BoundaryPoint eta = BoundaryPoint::from_angle(a.F.start + a.F.length * j / (n - 1));
            for (double s : {0.0, spec.alpha}) pts.push_back(footpoint(spec.p, xi, eta, s));
        }
    }
    return pts;
}

} // namespace

BoundaryArc BoundaryArc::from_endpoints(double a, double b) { return {wrap(a), wrap(b - a)}; }
double BoundaryArc::end() const { return wrap(start + length); }
double BoundaryArc::mid() const { return wrap(start + 0.5 * length); }
double BoundaryArc::offset(double angle) const { return wrap(angle - start); }

bool BoundaryArc::contains(double angle, double tol) const {
    double off = offset(angle);
    return off <= length + tol || off >= kTwoPi - tol;
}

bool BoundaryArc::subset_of(const BoundaryArc& o) const {
    if (!o.contains(start)) return false;
    return o.offset(start) + length <= o.length;
}

bool BoundaryArc::intersects(const BoundaryArc& o) const { return o.contains(start) || contains(o.start); }

std::optional<BoundaryArc> BoundaryArc::intersect(const BoundaryArc& o) const {
    if (o.contains(start)) return BoundaryArc{start, std::min(length, o.length - o.offset(start))};
    if (contains(o.start)) return BoundaryArc{o.start, std::min(o.length, length - offset(o.start))};
    return std::nullopt;
}

BoundaryArc BoundaryArc::image(const Mat2& g) const {
    return from_endpoints(map_angle(g, start), map_angle(g, start + length));
}

FlowBoxSpec FlowBoxSpec::make(const Point& p, double direction, double theta, double eps, double alpha) {
    FlowBoxSpec s;
    s.p = p;
    s.v0 = UnitVector{p, direction}.normalized();
    s.theta = theta;
    s.eps = eps;
    s.alpha = alpha;
    return s;
}

BoxArcs arcs(const FlowBoxSpec& spec) {
    if (!(spec.theta >= 0.0)) throw Error(ErrorKind::InvalidArgument, "aperture must be nonnegative");
    if (spec.theta >= 0.5 * kPi) throw Error(ErrorKind::ApertureTooLarge, "P and F touch at aperture pi/2");
    auto fwd = [&](double dir) { return forward_endpoint(UnitVector{spec.p, dir}).angle(); };
    double phi = spec.v0.direction;
    BoxArcs a;
    a.F = BoundaryArc::from_endpoints(fwd(phi - spec.theta), fwd(phi + spec.theta));
    a.P = BoundaryArc::from_endpoints(fwd(phi + kPi - spec.theta), fwd(phi + kPi + spec.theta));
    if (spec.theta == 0.0) a.F.length = a.P.length = 0.0;
    return a;
}

double s_coordinate(const FlowBoxSpec& spec, const UnitVector& v) {
    return busemann(backward_endpoint(v), v.base, spec.p);
}

double poisson_kernel(const Point& z, double angle) {
    DiskPoint w = cayley(z);
    double dx = std::cos(angle) - w.re, dy = std::sin(angle) - w.im;
    return w.one_minus_r2 / (dx * dx + dy * dy);
}

double visual_density(const Point& z, double angle) { return poisson_kernel(z, angle) / kTwoPi; }

double b_gamma(const Point& p, const Mat2& g, double angle) { return BusemannGap(p, g)(angle); }

bool gamma_star_member(const BoxArcs& a, const Mat2& g) {
    return a.F.image(g).subset_of(a.F) && a.P.image(g.inverse()).subset_of(a.P);
}

bool gamma_star_member(const FlowBoxSpec& spec, const Mat2& g) { return gamma_star_member(arcs(spec), g); }

bool gamma_t_alpha_member(const FlowBoxSpec& spec, const Mat2& g, double t, double alpha) {
    BoxArcs a = arcs(spec);
    if (!a.F.intersects(a.F.image(g))) return false;
    auto common = a.P.intersect(a.P.image(g));
    if (!common) return false;
    double e2 = spec.eps * spec.eps;
    return attains_window(BusemannGap(spec.p, g), *common, t - alpha, t + e2);
}

bool gamma_t_alpha_member(const FlowBoxSpec& spec, const Mat2& g, double t) {
    return gamma_t_alpha_member(spec, g, t, spec.alpha);
}

Interval b_gamma_range(const Point& p, const Mat2& g, const BoundaryArc& arc, int samples) {
    BusemannGap f(p, g);
    auto v = sample_values(f, arc, samples);
    int n = static_cast<int>(v.size());
    double gap = arc.length / (n - 1);
    double slack = f.lipschitz(arc.mid(), arc.length) * 0.5 * gap;
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return {*lo - slack, *hi + slack};
}

double b_gamma_oscillation(const FlowBoxSpec& spec, const Mat2& g, int samples) {
    auto v = sample_values(BusemannGap(spec.p, g), arcs(spec).P, samples);
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

bool full_branch(const FlowBoxSpec& spec, const Mat2& g, double t, double alpha) {
    double e2 = spec.eps * spec.eps;
    auto v = sample_values(BusemannGap(spec.p, g), arcs(spec).P, 65);
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi <= t + 2.0 * e2 && *lo >= t - alpha - e2;
}

double box_footprint_radius(const FlowBoxSpec& spec) {
    double r = 0.0;
    for (const Point& x : footpoint_samples(spec)) r = std::max(r, hyp_distance(spec.p, x));
    return 1.01 * r + 1e-3;
}

double box_footprint_diameter(const FlowBoxSpec& spec) {
    auto pts = footpoint_samples(spec);
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, hyp_distance(pts[i], pts[j]));
    return d;
}

double required_ball_radius(const FlowBoxSpec& spec, double t) {
    // a witness w has footpoint within D of p and phi^b w, b <= t + eps^2, within D of g p
    return t + spec.eps * spec.eps + 2.0 * box_footprint_radius(spec) + 1e-6;
}

double sweep_ball_radius(const FuchsianRep& rep, const std::vector<FlowBoxSpec>& boxes, double t) {
    double r = 0.0;
    for (const auto& b : boxes) r = std::max(r, required_ball_radius(b, t) + 2.0 * hyp_distance(rep.center, b.p));
    return r + 1e-9;
}

std::vector<GammaRecord> sweep_gamma_sets(const FuchsianRep& rep, const FlowBoxSpec& spec, const OrbitBall& ball,
                                          double t, double alpha) {
    if (ball.radius < required_ball_radius(spec, t) + 2.0 * hyp_distance(rep.center, spec.p))
        throw Error(ErrorKind::InsufficientRadius, "orbit ball radius below t + 2 * box footprint");
    BoxArcs a = arcs(spec);
    const double e2 = spec.eps * spec.eps;
    const double cosh_lo = std::cosh(std::max(0.0, t - alpha) - 1e-9);
    const double cosh_hi = std::cosh(required_ball_radius(spec, t));
    std::vector<GammaRecord> out;
    for (const Isometry& g : ball.elements) {
        // b_xi(gp, p) <= d(p, gp), so short displacements cannot reach the window
        double c = cosh_distance(spec.p, mobius_apply(g, spec.p));
        if (c < cosh_lo || c > cosh_hi) continue;
        if (classify(g) != IsometryType::Hyperbolic) continue;
        if (!gamma_t_alpha_member(spec, g, t, alpha)) continue;
        GammaRecord r;
        r.g = g;
        r.length = translation_length(g);
        r.in_gamma = true;
        r.in_gamma_star = gamma_star_member(a, g);
        if (r.in_gamma_star) {
            r.in_gamma_prime = element_root(rep, g).d == 1;
            r.window_ok = r.length >= t - alpha - e2 - 1e-9 && r.length <= t + 2.0 * e2 + 1e-9;
            auto [xm, xp] = axis_endpoints(g);
            r.endpoints_ok = a.P.contains(xm) && a.F.contains(xp);
        }
        out.push_back(std::move(r));
    }
    return out;
}

GammaCounts count_gamma_sets(const FuchsianRep& rep, const FlowBoxSpec& spec, const OrbitBall& ball, double t,
                             double alpha) {
    GammaCounts c;
    for (const auto& r : sweep_gamma_sets(rep, spec, ball, t, alpha)) {
        c.gamma += r.in_gamma;
        c.gamma_star += r.in_gamma_star;
        c.gamma_prime += r.in_gamma_prime;
    }
    return c;
}

ConformalCheck conformal_derivative_check(const Point& p, const Point& q, const BoundaryPoint& xi) {
    ConformalCheck c;
    double a = xi.angle();
    c.lhs = poisson_kernel(q, a) / poisson_kernel(p, a);
    c.rhs = std::exp(-busemann(xi, q, p));
    c.err = std::fabs(c.lhs / c.rhs - 1.0);
    return c;
}

MassEstimate barmu_mass(const PairMeasureGrid& grid, const BoundaryArc& A, const BoundaryArc& B) {
    if (A.intersects(B)) throw Error(ErrorKind::OverlappingArcs, "pair measure needs disjoint arcs");
    MassEstimate m;
    if (A.length == 0.0 || B.length == 0.0) return m;
    using boost::math::quadrature::gauss_kronrod;
    // Integrate over unit offsets: boost compares an unscaled error estimate
    // with a scaled tolerance, so tiny intervals would always hit max depth.
    double inner_err = 0.0;
    auto inner = [&](double u) {
        double a1 = A.start + A.length * u;
        BoundaryPoint xi = BoundaryPoint::from_angle(a1);
        double w1 = visual_density(grid.p, a1);
        auto f = [&](double v) {
            double a2 = B.start + B.length * v;
            return std::exp(gromov_beta(grid.p, xi, BoundaryPoint::from_angle(a2))) * w1 * visual_density(grid.p, a2);
        };
        double err = 0.0;
        double val = gauss_kronrod<double, 21>::integrate(f, 0.0, 1.0, static_cast<unsigned>(grid.max_depth),
                                                          grid.rel_tol, &err);
        inner_err = std::max(inner_err, err);
        return val;
    };
    double outer_err = 0.0;
    double val = gauss_kronrod<double, 21>::integrate(inner, 0.0, 1.0, static_cast<unsigned>(grid.max_depth),
                                                      grid.rel_tol, &outer_err);
    m.value = A.length * B.length * val;
    m.error = A.length * B.length * (outer_err + inner_err);
    if (!std::isfinite(m.value)) throw Error(ErrorKind::QuadratureFailure, "pair measure quadrature diverged");
    return m;
}

double measure_total(const FuchsianRep& rep) { return 4.0 * (rep.genus - 1); }

double box_measure(const PairMeasureGrid& grid, const FlowBoxSpec& spec, double alpha) {
    BoxArcs a = arcs(spec);
    return alpha * barmu_mass(grid, a.P, a.F).value;
}

ScalingReport scaling_check(const FlowBoxSpec& spec, const PairMeasureGrid& grid, const Mat2& g) {
    BoxArcs a = arcs(spec);
    double e2 = spec.eps * spec.eps;
    MassEstimate num = barmu_mass(grid, a.P, a.F.image(g));
    MassEstimate den = barmu_mass(grid, a.P, a.F);
    ScalingReport r;
    r.numerator = e2 * num.value;
    r.denominator = std::exp(-translation_length(g)) * e2 * den.value;
    r.ratio = r.numerator / r.denominator;
    r.quad_error = num.error / num.value + den.error / den.value;
    r.in_band = r.ratio >= std::exp(-2.0 * spec.eps) && r.ratio <= std::exp(2.0 * spec.eps);
    return r;
}

std::vector<FlowBoxSpec> box_family(const Point& p, double phi0, double theta, double eps, double alpha, int count) {
    if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "family needs a positive aperture");
    int n = count > 0 ? count : static_cast<int>(std::floor(kPi / theta - 1e-9));
    if (2.0 * theta * n > kTwoPi + 1e-12) throw Error(ErrorKind::InvalidArgument, "boxes would overlap");
    std::vector<FlowBoxSpec> out;
    for (int k = 0; k < n; ++k) out.push_back(FlowBoxSpec::make(p, phi0 + 2.0 * theta * k, theta, eps, alpha));
    return out;
}

MixingSeries mixing_ratio_curve(const FuchsianRep& rep, const std::vector<FlowBoxSpec>& family, const OrbitBall& ball,
                                const std::vector<double>& t_grid, double alpha) {
    if (family.empty()) throw Error(ErrorKind::InvalidArgument, "empty box family");
    MixingSeries s;
    s.alpha = alpha;
    s.eps = family.front().eps;
    s.band_lo = std::exp(-4.0 * s.eps);
    s.band_hi = std::exp(4.0 * s.eps) * (1.0 + 4.0 * s.eps * s.eps / alpha);
    for (const auto& box : family) {
        PairMeasureGrid grid{box.p};
        s.pooled_measure += box_measure(grid, box, alpha) / measure_total(rep);
    }
    for (double t : t_grid) {
        MixingPoint pt;
        pt.t = t;
        for (const auto& box : family) {
            GammaCounts c = count_gamma_sets(rep, box, ball, t, alpha);
            pt.gamma += c.gamma;
            pt.gamma_star += c.gamma_star;
        }
        pt.R_star = static_cast<double>(pt.gamma_star) * std::exp(-t) / s.pooled_measure;
        pt.R = static_cast<double>(pt.gamma) * std::exp(-t) / s.pooled_measure;
        s.points.push_back(pt);
    }
    return s;
}

PiSandwich pi_sandwich_check(const FuchsianRep& rep, const FlowBoxSpec& spec, const OrbitBall& ball, double t) {
    const double eps = spec.eps, e2 = eps * eps;
    BoxArcs a = arcs(spec);
    PiSandwich r;
    if (ball.radius < required_ball_radius(spec, t) + 2.0 * hyp_distance(rep.center, spec.p))
        throw Error(ErrorKind::InsufficientRadius, "orbit ball radius below t + 2 * box footprint");
    std::vector<Isometry> pi_hat;
    for (const Isometry& g : ball.elements) {
        if (classify(g) != IsometryType::Hyperbolic) continue;
        double len = translation_length(g);
        if (len <= t - eps || len > t) continue;
        auto [xm, xp] = axis_endpoints(g);
        if (!a.P.contains(xm) || !a.F.contains(xp)) continue;
        pi_hat.push_back(g);
        int d = element_root(rep, g).d;
        if (d >= 2) {
            ++r.gamma_two;
            r.multiplicity_sum += static_cast<std::size_t>(d);
        }
    }
    r.pi_hat = pi_hat.size();
    r.gamma_prime_lower = count_gamma_sets(rep, spec, ball, t - 2.0 * e2, eps - 4.0 * e2).gamma_prime;
    r.gamma_upper = count_gamma_sets(rep, spec, ball, t, eps).gamma;
    r.lower_ok = r.gamma_prime_lower <= r.pi_hat;
    r.upper_ok = r.pi_hat <= r.gamma_upper + r.multiplicity_sum;

    std::vector<std::pair<Mat2, std::size_t>> classes;
    for (const Isometry& g : pi_hat) {
        Mat2 c = canonical_element(rep, g);
        auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& e) { return fuzzy_equal(e.first, c); });
        if (it == classes.end())
            classes.push_back({c, 1});
        else
            ++it->second;
    }
    for (const auto& e : classes) r.max_class_share = std::max(r.max_class_share, e.second);
    return r;
}

ContinuityGate continuity_gate(const FlowBoxSpec& spec, const PairMeasureGrid& grid, double delta, double rel_limit) {
    auto mass = [&](double rho) {
        FlowBoxSpec s = spec;
        s.theta = rho;
        BoxArcs a = arcs(s);
        return barmu_mass(grid, a.P, a.F).value;
    };
    double m0 = mass(spec.theta);
    ContinuityGate g;
    for (double rho : {spec.theta - delta, spec.theta + delta})
        g.variation = std::max(g.variation, std::fabs(mass(rho) / m0 - 1.0));
    g.pass = g.variation < rel_limit;
    return g;
}

PairHistogram reference_pair_histogram(const FuchsianRep& rep, int bins) {
    if (bins < 1) throw Error(ErrorKind::InvalidArgument, "need at least one bin");
    PairHistogram h;
    h.bins = bins;
    h.mass.assign(static_cast<std::size_t>(bins * bins), 0.0);
    if (bins == 1) {
        h.mass[0] = 1.0;
        return h;
    }
    using boost::math::quadrature::gauss;
    const double w = kTwoPi / bins;
    double total = 0.0;
    for (int i = 0; i < bins; ++i) {
        for (int j = 0; j < bins; ++j) {
            auto inner = [&](double a1) {
                BoundaryPoint xi = BoundaryPoint::from_angle(a1);
                auto f = [&](double a2) {
                    double d2 = 2.0 - 2.0 * std::cos(a1 - a2);
                    // chord lengths vanish near the diagonal
                    if (d2 < 1e-20) return 0.0;
                    return chord_in_domain(rep, xi, BoundaryPoint::from_angle(a2)) * 4.0 / d2;
                };
                return gauss<double, 15>::integrate(f, w * j, w * (j + 1));
            };
            double s = gauss<double, 15>::integrate(inner, w * i, w * (i + 1));
            h.mass[static_cast<std::size_t>(i * bins + j)] = s;
            total += s;
        }
    }
    for (double& m : h.mass) m /= total;
    return h;
}

PairHistogram empirical_pair_histogram(const FuchsianRep& rep, const LengthSpectrum& spec, double t, double eps,
                                       int bins) {
    if (bins < 1) throw Error(ErrorKind::InvalidArgument, "need at least one bin");
    PairHistogram h;
    h.bins = bins;
    h.mass.assign(static_cast<std::size_t>(bins * bins), 0.0);
    auto bin_of = [&](double a) { return std::min(bins - 1, static_cast<int>(a / (kTwoPi / bins))); };
    std::size_t classes = 0;
    for (const auto& e : spec.entries) {
        if (e.length <= t - eps || e.length > t) continue;
        ++classes;
        auto members = axis_conjugate_matrices(rep, e.representative);
        std::vector<std::pair<int, double>> cells;
        double total = 0.0;
        for (const Mat2& m : members) {
            auto [xm, xp] = axis_endpoints(m);
            double c = chord_in_domain(rep, xm, xp);
            cells.push_back({bin_of(xm.angle()) * bins + bin_of(xp.angle()), c});
            total += c;
        }
        for (const auto& [cell, c] : cells) h.mass[static_cast<std::size_t>(cell)] += c / total;
    }
    if (classes > 0)
        for (double& m : h.mass) m /= static_cast<double>(classes);
    return h;
}

double total_variation(const PairHistogram& a, const PairHistogram& b) {
    if (a.bins != b.bins) throw Error(ErrorKind::InvalidArgument, "histograms use different grids");
    double s = 0.0;
    for (std::size_t k = 0; k < a.mass.size(); ++k) s += std::fabs(a.mass[k] - b.mass[k]);
    return 0.5 * s;
}

std::vector<EquidistPoint> endpoint_equidistribution(const FuchsianRep& rep, const LengthSpectrum& spec,
                                                     const std::vector<double>& t_grid, double eps, int bins) {
    PairHistogram ref = reference_pair_histogram(rep, bins);
    std::vector<EquidistPoint> out;
    for (double t : t_grid) {
        if (t > spec.t_max) throw Error(ErrorKind::OutOfRange, "t exceeds the spectrum range");
        EquidistPoint pt;
        pt.t = t;
        for (const auto& e : spec.entries) pt.classes += e.length > t - eps && e.length <= t;
        PairHistogram emp = empirical_pair_histogram(rep, spec, t, eps, bins);
        pt.tv = bins == 1 ? 0.0 : total_variation(emp, ref);
        out.push_back(pt);
    }
    return out;
}

OccupationPoint disc_occupation(const FuchsianRep& rep, const LengthSpectrum& spec, double t, double eps, double r) {
    if (r > rep.inradius) throw Error(ErrorKind::InvalidArgument, "disc must lie in the polygon");
    OccupationPoint o;
    o.reference = 2.0 * (std::cosh(r) - 1.0) / measure_total(rep);
    std::size_t classes = 0;
    double sum = 0.0;
    for (const auto& e : spec.entries) {
        if (e.length <= t - eps || e.length > t) continue;
        ++classes;
        double inside = 0.0;
        for (const Mat2& m : axis_conjugate_matrices(rep, e.representative)) {
            double delta = std::asinh(std::fabs(axis_signed_sinh_distance(m, rep.center)));
            if (delta < r) inside += 2.0 * std::acosh(std::cosh(r) / std::cosh(delta));
        }
        sum += inside / e.length;
    }
    if (classes > 0) o.empirical = sum / static_cast<double>(classes);
    return o;
}

} // namespace geolab
