#include "geolab/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace geolab {

namespace {

using ld = long double;

struct Mat2L {
    ld a, b, c, d;
    Mat2L operator*(const Mat2L& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

Mat2L rotation_about_i(ld phi) {
    ld h = phi / 2;
    return {std::cos(h), std::sin(h), -std::sin(h), std::cos(h)};
}

Point disk_to_half_plane(double re, double im) {
    // z = i (1 + w) / (1 - w)
    double dre = 1.0 - re, dim = -im;
    double den = dre * dre + dim * dim;
    double nre = 1.0 + re, nim = im;
    double qre = (nre * dre + nim * dim) / den;
    double qim = (nim * dre - nre * dim) / den;
    return {-qim, qre};
}

} // namespace

double FuchsianRep::area() const { return 4.0 * std::numbers::pi * (genus - 1); }

void check_relation(FuchsianRep& rep) {
    Mat2 m = word_to_matrix(rep, rep.relator);
    rep.relation_residual = distance_to_identity(m);
    if (!(rep.relation_residual < 1e-9))
        throw Error(ErrorKind::RelationResidual,
                    "relation residual " + std::to_string(rep.relation_residual) + " exceeds 1e-9");
}

FuchsianRep build_fuchsian_rep(int genus) {
    if (genus < 2) throw Error(ErrorKind::InvalidGenus, "genus must be at least 2");
    FuchsianRep rep;
    rep.genus = genus;
    const int n = 4 * genus;
    const ld pi = std::numbers::pi_v<ld>;
    const ld cot = std::cos(pi / n) / std::sin(pi / n);
    const ld e_rho = cot + std::sqrt(cot * cot - 1);
    rep.inradius = static_cast<double>(std::acosh(cot));
    rep.circumradius = static_cast<double>(std::acosh(cot * cot));
    rep.fundamental_domain_diameter = 2.0 * rep.circumradius;

    const Mat2L t{e_rho, 0, 0, 1 / e_rho};
    rep.generators.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < 2 * genus; ++k) {
        ld phi = k * pi / (2 * genus);
        Mat2L r = rotation_about_i(phi), rinv = rotation_about_i(-phi);
        Mat2L x = r * t * rinv;
        Mat2L xi{x.d, -x.b, -x.c, x.a};
        Letter l = make_letter(k, false);
        rep.generators[l] = Isometry(Mat2{static_cast<double>(x.a), static_cast<double>(x.b),
                                          static_cast<double>(x.c), static_cast<double>(x.d)},
                                     Word({l}));
        rep.generators[inverse_letter(l)] =
            Isometry(Mat2{static_cast<double>(xi.a), static_cast<double>(xi.b), static_cast<double>(xi.c),
                          static_cast<double>(xi.d)},
                     Word({inverse_letter(l)}));
    }

    std::vector<Letter> rel;
    for (int k = 0; k < 2 * genus; ++k) rel.push_back(make_letter(k, k % 2 == 1));
    for (int k = 0; k < 2 * genus; ++k) rel.push_back(make_letter(k, k % 2 == 0));
    rep.relator = Word(rel);

    const ld rv = std::tanh(static_cast<ld>(rep.circumradius) / 2);
    for (int k = 0; k < n; ++k) {
        ld psi = (k + 0.5L) * pi / (2 * genus);
        rep.vertices.push_back(
            disk_to_half_plane(static_cast<double>(rv * std::cos(psi)), static_cast<double>(rv * std::sin(psi))));
    }
    for (const auto& g : rep.generators) rep.neighbor_centers.push_back(mobius_apply(g, rep.center));

    check_relation(rep);
    return rep;
}

Isometry word_to_matrix(const FuchsianRep& rep, const Word& w) {
    Mat2 m = Mat2::identity();
    for (Letter l : w.letters()) m = m * rep.gen(l);
    return Isometry(m.normalized(), w);
}

int descent_letter(const FuchsianRep& rep, const Point& z) {
    const double c0 = cosh_dist_center(z);
    int best = -1;
    double best_c = c0 * (1.0 - 1e-12);
    for (int l = 0; l < rep.letter_count(); ++l) {
        double c = cosh_distance(z, rep.neighbor_centers[static_cast<std::size_t>(l)]);
        if (best < 0 ? c < best_c : c < best_c * (1.0 - 1e-10)) {
            best = l;
            best_c = c;
        }
    }
    return best;
}

PointReduction reduce_point(const FuchsianRep& rep, const Point& z) {
    PointReduction r;
    r.element = Mat2::identity();
    r.reduced = z;
    for (int step = 0; step < 100000; ++step) {
        int l = descent_letter(rep, r.reduced);
        if (l < 0) return r;
        Letter letter = static_cast<Letter>(l);
        r.reduced = mobius_apply(rep.gen(inverse_letter(letter)), r.reduced);
        r.word.push_back(letter);
        r.element = r.element * rep.gen(letter);
    }
    throw Error(ErrorKind::ResourceCap, "point reduction did not terminate");
}

bool in_group(const FuchsianRep& rep, const Mat2& g, Word* word, double rel_tol) {
    Point x = mobius_apply(g, rep.center);
    if (!x.valid()) return false;
    PointReduction red = reduce_point(rep, x);
    // the stabilizer of i is the rotation group, so compare matrices, not images
    if (!fuzzy_equal(red.element, g, rel_tol)) return false;
    if (word) *word = red.word;
    return true;
}

bool axis_meets_domain(const FuchsianRep& rep, const Mat2& g, double tol) {
    bool any_above = false, any_below = false;
    for (const Point& v : rep.vertices) {
        double f = axis_signed_sinh_distance(g, v);
        if (f <= tol) any_below = true;
        if (f >= -tol) any_above = true;
        if (any_above && any_below) return true;
    }
    return false;
}

namespace {

Point point_on_axis(const Mat2& g) {
    auto [u, v] = axis_endpoints(g);
    if (u.is_infinite()) return {v.x(), 1.0};
    if (v.is_infinite()) return {u.x(), 1.0};
    return {0.5 * (u.x() + v.x()), 0.5 * std::fabs(u.x() - v.x())};
}

Mat2 conjugate_by(const FuchsianRep& rep, const Mat2& c, Letter l) {
    return rep.gen(inverse_letter(l)) * c * rep.gen(l);
}

std::vector<Mat2> conjugate_closure(const FuchsianRep& rep, const Mat2& start) {
    std::vector<Mat2> members{start};
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (int l = 0; l < rep.letter_count(); ++l) {
            Mat2 c = conjugate_by(rep, members[i], static_cast<Letter>(l));
            if (!axis_meets_domain(rep, c)) continue;
            bool seen = false;
            for (const auto& m : members) {
                if (fuzzy_equal(m, c)) {
                    seen = true;
                    break;
                }
            }
            if (seen) continue;
            members.push_back(c);
            if (members.size() > 100000) throw Error(ErrorKind::ResourceCap, "axis conjugate set too large");
        }
    }
    return members;
}

} // namespace

std::vector<Mat2> axis_conjugate_matrices(const FuchsianRep& rep, const Mat2& g) {
    if (classify(g) != IsometryType::Hyperbolic) throw Error(ErrorKind::NotHyperbolic, "axis_conjugates");
    if (axis_meets_domain(rep, g)) return conjugate_closure(rep, g);
    PointReduction red = reduce_point(rep, point_on_axis(g));
    return conjugate_closure(rep, red.element.inverse() * g * red.element);
}

std::vector<Mat2> axis_conjugate_matrices(const FuchsianRep& rep, const Isometry& g) {
    if (!g.word || axis_meets_domain(rep, g)) return axis_conjugate_matrices(rep, static_cast<const Mat2&>(g));
    if (classify(g) != IsometryType::Hyperbolic) throw Error(ErrorKind::NotHyperbolic, "axis_conjugates");
    // conjugate on the word so large matrices are never multiplied back down
    PointReduction red = reduce_point(rep, point_on_axis(g));
    Mat2 start = word_to_matrix(rep, red.word.inverse() * *g.word * red.word);
    if (!axis_meets_domain(rep, start)) return axis_conjugate_matrices(rep, start);
    return conjugate_closure(rep, start);
}

Isometry with_word(const FuchsianRep& rep, const Mat2& g) {
    Word w;
    if (!in_group(rep, g, &w)) throw Error(ErrorKind::InvalidArgument, "matrix is not a group element");
    return Isometry(g.normalized(), w);
}

std::vector<Isometry> axis_conjugates(const FuchsianRep& rep, const Isometry& g) {
    std::vector<Isometry> out;
    for (const Mat2& m : axis_conjugate_matrices(rep, g)) out.push_back(with_word(rep, m));
    return out;
}

Isometry canonical_element(const FuchsianRep& rep, const Isometry& g) {
    auto members = axis_conjugate_matrices(rep, g);
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i)
        if (fuzzy_compare(members[i], members[best]) < 0) best = i;
    return with_word(rep, members[best]);
}

ElementRoot element_root(const FuchsianRep& rep, const Isometry& g) {
    double len = translation_length(g);
    Mat2 s = g.trace() < 0 ? Mat2{-g.a, -g.b, -g.c, -g.d} : static_cast<const Mat2&>(g);
    double half = 0.5 * s.trace();
    double sh = std::sinh(0.5 * len);
    Mat2 n{(s.a - half) / sh, s.b / sh, s.c / sh, (s.d - half) / sh};
    int kmax = static_cast<int>(std::floor(len / 0.5));
    for (int k = kmax; k >= 2; --k) {
        double ch = std::cosh(0.5 * len / k), shk = std::sinh(0.5 * len / k);
        Mat2 beta{ch + shk * n.a, shk * n.b, shk * n.c, ch + shk * n.d};
        Word w;
        if (in_group(rep, beta, &w)) {
            Isometry root = word_to_matrix(rep, w);
            return {root, k};
        }
    }
    return {g, 1};
}

std::pair<double, std::pair<BoundaryPoint, BoundaryPoint>> class_geometry(const FuchsianRep& rep,
                                                                          const ConjClass& c) {
    if (c.cyclic_word.empty()) throw Error(ErrorKind::TrivialClass, "class_geometry of the trivial class");
    Isometry m = word_to_matrix(rep, c.cyclic_word);
    return {translation_length(m), axis_endpoints(m)};
}

double chord_in_domain(const FuchsianRep& rep, const BoundaryPoint& xi, const BoundaryPoint& eta) {
    auto klein_of = [](const Point& z) {
        DiskPoint w = cayley(z);
        double r2 = w.re * w.re + w.im * w.im;
        return std::pair<double, double>{2 * w.re / (1 + r2), 2 * w.im / (1 + r2)};
    };
    double a1 = xi.angle(), a2 = eta.angle();
    double ex = std::cos(a1), ey = std::sin(a1);
    double fx = std::cos(a2), fy = std::sin(a2);
    double dx = fx - ex, dy = fy - ey;
    double t0 = 0.0, t1 = 1.0;
    const std::size_t n = rep.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto [px, py] = klein_of(rep.vertices[i]);
        auto [qx, qy] = klein_of(rep.vertices[(i + 1) % n]);
        // inward normal of a counterclockwise edge
        double nx = -(qy - py), ny = qx - px;
        double num = nx * (ex - px) + ny * (ey - py);
        double den = nx * dx + ny * dy;
        if (den == 0.0) {
            if (num < 0) return 0.0;
            continue;
        }
        double t = -num / den;
        if (den > 0)
            t0 = std::max(t0, t);
        else
            t1 = std::min(t1, t);
        if (t0 >= t1) return 0.0;
    }
    double ux = ex + t0 * dx, uy = ey + t0 * dy;
    double vx = ex + t1 * dx, vy = ey + t1 * dy;
    double num = 1.0 - (ux * vx + uy * vy);
    double den = std::sqrt((1.0 - ux * ux - uy * uy) * (1.0 - vx * vx - vy * vy));
    return std::acosh(std::max(1.0, num / den));
}

} // namespace geolab
