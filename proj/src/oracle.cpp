#include "geolab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geolab/matrix_set.hpp"

namespace geolab {

namespace {

double cosh_disp(const Mat2& g) { return 0.5 * (g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d); }

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

std::vector<Mat2> bfs_ball(const FuchsianRep& rep, double radius) {
    // Every orbit point outside the polygon has a strictly closer neighbour, so
    // the ball is connected inside itself in the Cayley graph.
    const double limit = std::cosh(radius) * (1.0 + 1e-12);
    MatrixSet seen;
    seen.insert(Mat2::identity());
    std::vector<Mat2> frontier{Mat2::identity()};
    while (!frontier.empty()) {
        std::vector<Mat2> next;
        for (const Mat2& g : frontier) {
            for (int l = 0; l < rep.letter_count(); ++l) {
                Mat2 h = rep.gen(static_cast<Letter>(l)) * g;
                if (cosh_disp(h) > limit) continue;
                if (seen.insert(h).second) next.push_back(h);
            }
        }
        frontier = std::move(next);
    }
    std::vector<Mat2> out;
    for (std::size_t i = 0; i < seen.size(); ++i) out.push_back(seen[i]);
    return out;
}

bool axis_meets_polygon(const FuchsianRep& rep, const Mat2& g, double tol) {
    double lo = INFINITY, hi = -INFINITY;
    for (const Point& v : rep.vertices) {
        double s = axis_signed_sinh_distance(g, v);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return lo <= tol && hi >= -tol;
}

BruteSpectrum brute_force_spectrum(const FuchsianRep& rep, double t_max) {
    BruteSpectrum out;
    out.t_max = t_max;
    // sinh(d(o, g o)/2) = cosh(dist(o, axis)) sinh(|g|/2) with dist <= r_circ
    const double radius = 2.0 * std::asinh(std::cosh(rep.circumradius) * std::sinh(0.5 * t_max)) + 1e-9;
    const double tr_max = 2.0 * std::cosh(0.5 * t_max) * (1.0 + 1e-12);

    auto candidates_of = [&](const std::vector<Mat2>& ball) {
        std::vector<Mat2> c;
        for (const Mat2& g : ball) {
            double tr = std::fabs(g.trace());
            if (tr <= 2.0 + 1e-9 || tr > tr_max) continue;
            if (translation_length(g) > t_max) continue;
            if (cosh_disp(g) > std::cosh(radius)) continue;
            if (axis_meets_polygon(rep, g)) c.push_back(g);
        }
        return c;
    };
    std::vector<Mat2> ball = bfs_ball(rep, radius);
    std::vector<Mat2> cand = candidates_of(ball);
    out.ball_size = ball.size();
    out.stable = candidates_of(bfs_ball(rep, radius + 1.0)).size() == cand.size();

    MatrixSet index;
    for (const Mat2& c : cand) index.insert(c);
    std::vector<Mat2> conj = bfs_ball(rep, 2.0 * rep.circumradius + 0.5 * t_max + 1e-6);
    UnionFind uf(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        for (const Mat2& h : conj) {
            std::int64_t j = index.find(h * index[i] * h.inverse());
            if (j >= 0) uf.unite(i, static_cast<std::size_t>(j));
        }
    }
    std::vector<std::int64_t> slot(index.size(), -1);
    for (std::size_t i = 0; i < index.size(); ++i) {
        std::size_t r = uf.find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<std::int64_t>(out.classes.size());
            out.classes.push_back({translation_length(index[i]), {}});
        }
        out.classes[static_cast<std::size_t>(slot[r])].members.push_back(index[i]);
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const BruteClass& a, const BruteClass& b) { return a.length < b.length; });
    return out;
}

} // namespace geolab
