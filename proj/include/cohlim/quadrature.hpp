#pragma once

#include <vector>

namespace cohlim {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [0, 1].
GaussRule gauss_legendre_unit(int n);

/// n-point Gauss–Jacobi rule on [0, 1] for the weight (1 - x)^alpha, alpha > -1.
GaussRule gauss_jacobi_unit(int n, double alpha);

}  // namespace cohlim
