#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "gns/error.hpp"

namespace gns {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1], increasing
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` nodes (Newton iteration on P_order).
inline QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
    QuadratureRule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[order - 1 - i] = x;
        r.weights[i] = w;
        r.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) r.nodes[order / 2] = 0.0;
    return r;
}

}  // namespace gns
