#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geolab/fuchsian.hpp"

namespace geolab {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0; // largest residual seen
    double limit = 0.0;
    std::size_t samples = 0;
};

// Invariant suite: relator residual, Busemann cocycle/antisymmetry/
// equivariance and finite approximants, conformal densities, conjugacy
// canonicalization, pair-measure invariance and the brute-force spectrum.
// Deterministic for a given seed.
std::vector<CheckResult> run_selftest(const FuchsianRep& rep, std::uint64_t seed, int workers = 1);

} // namespace geolab
