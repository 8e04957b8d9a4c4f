#pragma once

#include <vector>

namespace lagrtori {

/// Gauss-Legendre rule mapped to [0, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

/// Composite rule: `panels` equal panels of an n-point rule each, on [0, 1].
GaussRule composite_gauss_legendre(int n, int panels);

}  // namespace lagrtori
