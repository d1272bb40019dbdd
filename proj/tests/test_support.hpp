#pragma once

#include <complex>
#include <random>

#include "cohlim/rep.hpp"

namespace cohlim::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Uniform point of the disk |τ| <= radius.
inline std::complex<double> random_disk_point(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * 3.141592653589793));
}

/// Largest entry of (x - y) on the leading `size` x `size` block.
inline double block_diff(const Matrix& x, const Matrix& y, int size) {
    return (x.topLeftCorner(size, size) - y.topLeftCorner(size, size)).cwiseAbs().maxCoeff();
}

}  // namespace cohlim::testing
