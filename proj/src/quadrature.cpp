#include "dpplab/quadrature.hpp"

#include "dpplab/error.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <utility>

namespace dpplab {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if (n == 0) return {1.0, 0.0};
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int order, double a, double b) {
    require(order >= 1, "gauss_legendre: order must be >= 1");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order)),
        &gsl_integration_glfixed_table_free);
    if (!table) throw NumericalError("gauss_legendre: table allocation failed");

    // GSL's large-order tables are only accurate to about 1e-10, so the nodes are
    // polished by Newton steps and the weights recomputed from P_n'.
    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < order; ++i) {
        double x = 0.0, w = 0.0;
        gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &x, &w, table.get());
        if (order > 1) {
            for (int it = 0; it < 3; ++it) {
                const auto [p, dp] = legendre(order, x);
                x -= p / dp;
            }
            const double dp = legendre(order, x).second;
            w = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        rule.nodes[i] = mid + half * x;
        rule.weights[i] = half * w;
    }
    return rule;
}

}  // namespace dpplab
