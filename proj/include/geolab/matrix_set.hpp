#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "geolab/core.hpp"

namespace geolab {

// Hash set of PSL(2,R) elements keyed by quantized sign-canonical entries
// (grid 1e-6), probing neighbouring cells for coordinates near a rounding
// boundary and confirming hits with fuzzy_equal.
class MatrixSet {
public:
    explicit MatrixSet(double grid = 1e-6) : grid_(grid) {}

    // Index of an equal element, or -1.
    std::int64_t find(const Mat2& g) const;
    // Inserts if absent; returns (index, inserted).
    std::pair<std::int64_t, bool> insert(const Mat2& g);

    std::size_t size() const { return items_.size(); }
    const Mat2& operator[](std::size_t i) const { return items_[i]; }

private:
    using Key = std::array<std::int64_t, 4>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };

    Key key_of(const std::array<double, 4>& v) const;
    double grid_;
    std::vector<Mat2> items_;
    std::unordered_multimap<Key, std::int64_t, KeyHash> map_;
};

} // namespace geolab
