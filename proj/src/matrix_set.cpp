#include "geolab/matrix_set.hpp"

#include <cmath>

namespace geolab {

std::size_t MatrixSet::KeyHash::operator()(const Key& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

MatrixSet::Key MatrixSet::key_of(const std::array<double, 4>& v) const {
    Key k;
    for (int i = 0; i < 4; ++i) k[i] = std::llround(v[i] / grid_);
    return k;
}

std::int64_t MatrixSet::find(const Mat2& g0) const {
    Mat2 g = robust_sign(g0);
    std::array<double, 4> v{g.a, g.b, g.c, g.d};
    Key base = key_of(v);
    // alternative rounding for coordinates close to a cell boundary
    std::array<std::int64_t, 4> alt{};
    int near = 0;
    for (int i = 0; i < 4; ++i) {
        double s = v[i] / grid_;
        double frac = s - std::floor(s);
        alt[i] = base[i];
        if (std::fabs(frac - 0.5) < 0.1) {
            alt[i] = (s - static_cast<double>(base[i]) > 0) ? base[i] + 1 : base[i] - 1;
            near |= 1 << i;
        }
    }
    for (int mask = 0; mask < 16; ++mask) {
        if ((mask & ~near) != 0) continue;
        Key k = base;
        for (int i = 0; i < 4; ++i)
            if (mask & (1 << i)) k[i] = alt[i];
        auto range = map_.equal_range(k);
        for (auto it = range.first; it != range.second; ++it)
            if (fuzzy_equal(items_[static_cast<std::size_t>(it->second)], g)) return it->second;
    }
    return -1;
}

std::pair<std::int64_t, bool> MatrixSet::insert(const Mat2& g0) {
    std::int64_t idx = find(g0);
    if (idx >= 0) return {idx, false};
    Mat2 g = robust_sign(g0);
    idx = static_cast<std::int64_t>(items_.size());
    items_.push_back(g);
    map_.emplace(key_of({g.a, g.b, g.c, g.d}), idx);
    return {idx, true};
}

} // namespace geolab
