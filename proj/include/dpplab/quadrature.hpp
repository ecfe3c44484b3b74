#pragma once

#include <vector>

namespace dpplab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` points mapped to [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

}  // namespace dpplab
