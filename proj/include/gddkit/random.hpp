#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gddkit/matrix.hpp"

namespace gddkit {

using Rng = std::mt19937_64;

/// Uniform in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Components log-uniform in [lo, hi].
inline PositiveScaling log_uniform_scaling(Rng& rng, std::size_t n, double lo = 1e-3, double hi = 1e3) {
    std::vector<double> x(n);
    const double a = std::log(lo), b = std::log(hi);
    for (auto& v : x) v = std::exp(uniform(rng, a, b));
    return PositiveScaling(std::move(x));
}

}  // namespace gddkit
