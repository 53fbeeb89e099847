#include "geolab/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace geolab {

namespace {

double cosh_displacement(const Mat2& g) { return 0.5 * (g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d); }

Point center_image(const Mat2& g) {
    double den = g.c * g.c + g.d * g.d;
    return {(g.a * g.c + g.b * g.d) / den, 1.0 / den};
}

// Runs task(i) for i in [0, n) on up to `workers` threads.
template <class Task>
void parallel_for(std::size_t n, int workers, Task task) {
    std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) task(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

Word BallNode::word() const {
    Word w;
    for (int i = depth - 1; i >= 0; --i) w.push_back(path[i]);
    return w;
}

BallTraversal::BallTraversal(const FuchsianRep& rep, double radius)
    : rep_(rep), radius_(radius), cosh_radius_(std::cosh(radius) * (1.0 + 1e-12)) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) throw Error(ErrorKind::InvalidArgument, "ball radius must be >= 0");
    shallow_.push_back({Mat2::identity(), {}});
    std::vector<Seed> level{shallow_.front()};
    for (int depth = 1; depth <= 3; ++depth) {
        std::vector<Seed> next;
        for (const Seed& p : level) {
            double pc = cosh_displacement(p.element);
            for (int s = 0; s < rep_.letter_count(); ++s) {
                Letter l = static_cast<Letter>(s);
                Mat2 child = rep_.gen(l) * p.element;
                if (!accept(child, l, pc)) continue;
                Seed c{child, p.path};
                c.path.push_back(l);
                next.push_back(std::move(c));
            }
        }
        if (depth < 3)
            shallow_.insert(shallow_.end(), next.begin(), next.end());
        else
            seeds_ = next;
        level = std::move(next);
    }
}

bool BallTraversal::accept(const Mat2& child, Letter s, double parent_cosh) const {
    double c = cosh_displacement(child);
    if (c > cosh_radius_ || c <= parent_cosh) return false;
    return descent_letter(rep_, center_image(child)) == s;
}

bool BallTraversal::walk(std::size_t subtree, const Seed& seed, const Visitor& visit) const {
    std::vector<Letter> path = seed.path;
    path.reserve(64);
    BallNode node;
    auto emit = [&](const Mat2& m) {
        node.element = m;
        node.image = center_image(m);
        node.path = path.data();
        node.depth = static_cast<int>(path.size());
        return visit(subtree, node);
    };
    if (!emit(seed.element)) return false;

    struct Frame {
        Mat2 m;
        double cosh_d;
        int next;
    };
    std::vector<Frame> stack;
    stack.push_back({seed.element, cosh_displacement(seed.element), 0});
    const int n = rep_.letter_count();
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next == n) {
            stack.pop_back();
            if (!stack.empty()) path.pop_back();
            continue;
        }
        Letter s = static_cast<Letter>(f.next++);
        Mat2 child = rep_.gen(s) * f.m;
        if (!accept(child, s, f.cosh_d)) continue;
        path.push_back(s);
        if (!emit(child)) return false;
        stack.push_back({child, cosh_displacement(child), 0});
    }
    return true;
}

bool BallTraversal::run(int workers, const Visitor& visit) const {
    std::atomic<bool> stopped{false};
    parallel_for(subtree_count(), workers, [&](std::size_t i) {
        if (stopped.load()) return;
        if (i == 0) {
            for (const Seed& s : shallow_) {
                BallNode node{s.element, center_image(s.element), s.path.data(), static_cast<int>(s.path.size())};
                if (!visit(0, node)) {
                    stopped = true;
                    return;
                }
            }
            return;
        }
        if (!walk(i, seeds_[i - 1], visit)) stopped = true;
    });
    return !stopped.load();
}

BallCapExceeded::BallCapExceeded(OrbitBall partial)
    : Error(ErrorKind::ResourceCap, "orbit ball element cap exceeded"), partial_(std::move(partial)) {}

SpectrumCapExceeded::SpectrumCapExceeded(LengthSpectrum partial)
    : Error(ErrorKind::ResourceCap, "spectrum enumeration cap exceeded"), partial_(std::move(partial)) {}

OrbitBall enumerate_ball(const FuchsianRep& rep, double radius, int workers, std::size_t cap) {
    BallTraversal trav(rep, radius);
    std::vector<std::vector<Isometry>> parts(trav.subtree_count());
    std::atomic<std::size_t> count{0};
    bool complete = trav.run(workers, [&](std::size_t sub, const BallNode& node) {
        if (cap && ++count > cap) return false;
        parts[sub].emplace_back(node.element.normalized(), node.word());
        return true;
    });
    OrbitBall ball;
    ball.radius = radius;
    ball.complete = complete;
    for (auto& p : parts) ball.elements.insert(ball.elements.end(), p.begin(), p.end());
    std::sort(ball.elements.begin(), ball.elements.end(), [](const Isometry& x, const Isometry& y) {
        double cx = cosh_displacement(x), cy = cosh_displacement(y);
        if (cx != cy) return cx < cy;
        return *x.word < *y.word;
    });
    if (!complete) throw BallCapExceeded(std::move(ball));
    return ball;
}

std::vector<std::uint64_t> ball_counts(const FuchsianRep& rep, const std::vector<double>& radii, int workers,
                                       Point base) {
    if (radii.empty()) return {};
    if (!base.valid()) throw Error(ErrorKind::InvalidArgument, "invalid base point");
    std::vector<double> sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> cosh_r;
    for (double r : sorted) cosh_r.push_back(std::cosh(r) * (1.0 + 1e-12));
    const double shift = hyp_distance(rep.center, base);
    const bool at_center = shift == 0.0;
    BallTraversal trav(rep, sorted.back() + 2.0 * shift);
    std::vector<std::vector<std::uint64_t>> hist(trav.subtree_count(),
                                                 std::vector<std::uint64_t>(sorted.size() + 1, 0));
    trav.run(workers, [&](std::size_t sub, const BallNode& node) {
        double c = at_center ? cosh_displacement(node.element)
                             : cosh_distance(base, mobius_apply(node.element, base));
        auto k = static_cast<std::size_t>(std::lower_bound(cosh_r.begin(), cosh_r.end(), c) - cosh_r.begin());
        ++hist[sub][k];
        return true;
    });
    std::vector<std::uint64_t> cum(sorted.size(), 0);
    std::uint64_t run = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        for (const auto& h : hist) run += h[k];
        cum[k] = run;
    }
    std::vector<std::uint64_t> out;
    for (double r : radii) {
        auto k = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), r) - sorted.begin());
        out.push_back(cum[k]);
    }
    return out;
}

double spectrum_radius(const FuchsianRep& rep, double t_max) {
    return 2.0 * std::asinh(std::cosh(rep.circumradius) * std::sinh(0.5 * t_max)) + 1e-9;
}

LengthSpectrum conjugacy_spectrum(const FuchsianRep& rep, double t_max, int workers, std::size_t cap) {
    if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_max must be positive");
    BallTraversal trav(rep, spectrum_radius(rep, t_max));
    const double tr_max = 2.0 * std::cosh(0.5 * t_max) * (1.0 + 1e-12);
    std::vector<std::vector<SpectrumEntry>> parts(trav.subtree_count());
    std::atomic<std::size_t> count{0};

    bool complete = trav.run(workers, [&](std::size_t sub, const BallNode& node) {
        if (cap && ++count > cap) return false;
        const Mat2& m = node.element;
        double tr = std::fabs(m.trace());
        if (tr <= 2.0 + tol::algebraic || tr > tr_max) return true;
        if (!axis_meets_domain(rep, m)) return true;
        double len = translation_length(m);
        if (len > t_max) return true;
        auto members = axis_conjugate_matrices(rep, m);
        for (const Mat2& c : members)
            if (fuzzy_compare(c, m) < 0) return true;
        // the inverse class has the inverted members as its axis conjugates
        Mat2 inv_min = members.front().inverse();
        for (const Mat2& c : members)
            if (fuzzy_compare(c.inverse(), inv_min) < 0) inv_min = c.inverse();

        SpectrumEntry e;
        e.length = len;
        e.orientation_leader = fuzzy_compare(m, inv_min) < 0;
        e.representative = Isometry(m.normalized(), node.word());
        e.cls = canonical_conj_form(*e.representative.word);
        ElementRoot r = element_root(rep, e.representative);
        e.d = r.d;
        e.root = r.d == 1 ? e.cls : canonical_conj_form(*canonical_element(rep, r.root).word);
        auto ends = axis_endpoints(m);
        e.xi_minus = ends.first;
        e.xi_plus = ends.second;
        parts[sub].push_back(std::move(e));
        return true;
    });

    LengthSpectrum spec;
    spec.t_max = t_max;
    spec.complete = complete;
    for (auto& p : parts)
        for (auto& e : p) spec.entries.push_back(std::move(e));
    std::sort(spec.entries.begin(), spec.entries.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
        if (x.length != y.length) return x.length < y.length;
        return x.cls < y.cls;
    });
    if (!complete) throw SpectrumCapExceeded(std::move(spec));
    return spec;
}

std::map<int, std::size_t> multiplicity_profile(const LengthSpectrum& spec, double t, double eps) {
    if (t > spec.t_max) throw Error(ErrorKind::OutOfRange, "t exceeds the spectrum range");
    std::map<int, std::size_t> hist;
    for (const auto& e : spec.entries)
        if (e.length > t - eps && e.length <= t) ++hist[e.d];
    return hist;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_spectrum_csv(std::ostream& out, const LengthSpectrum& spec, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    out << "length,canonical_word,d,root_word,xi_minus_angle,xi_plus_angle\n";
    for (const auto& e : spec.entries) {
        out << format_double(e.length) << ',' << e.cls.str() << ',' << e.d << ',' << e.root.str() << ','
            << format_double(e.xi_minus.angle()) << ',' << format_double(e.xi_plus.angle()) << '\n';
    }
}

} // namespace geolab
