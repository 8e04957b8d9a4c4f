#include "lagrtori/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lagrtori {

GaussRule gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

GaussRule composite_gauss_legendre(int n, int panels)
{
    const GaussRule base = gauss_legendre(n);
    GaussRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(n) * panels);
    rule.weights.reserve(static_cast<std::size_t>(n) * panels);
    const double width = 1.0 / panels;
    for (int p = 0; p < panels; ++p)
        for (int i = 0; i < n; ++i) {
            rule.nodes.push_back((p + base.nodes[i]) * width);
            rule.weights.push_back(base.weights[i] * width);
        }
    return rule;
}

}  // namespace lagrtori
