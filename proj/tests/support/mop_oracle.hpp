#pragma once

// Monic type II multiple orthogonal polynomials built directly from the
// orthogonality conditions, in long double. Used to check the recurrence
// machinery at small degree.

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <vector>

namespace oracle {

using Real = long double;
using Poly = std::vector<Real>;  // ascending coefficients

// E[(a + Z / sqrt(N))^t] for t = 0..T, i.e. normalised moments of exp(-N x^2 / 2 + N a x).
inline std::vector<Real> gaussian_moments(Real a, long N, int T) {
    std::vector<Real> out(T + 1);
    const Real var = 1.0L / N;
    for (int t = 0; t <= T; ++t) {
        Real s = 0, binom = 1, dfact = 1;  // C(t, i), (i - 1)!!
        for (int i = 0; i <= t; ++i) {
            if (i > 0) binom = binom * (t - i + 1) / i;
            if (i % 2 == 0) {
                if (i >= 2) dfact *= (i - 1);
                s += binom * std::pow(a, static_cast<Real>(t - i)) * dfact * std::pow(var, static_cast<Real>(i / 2));
            }
        }
        out[t] = s;
    }
    return out;
}

// Normalised moments of x^{N alpha} exp(-N a x) on (0, inf): prod_{i=1..t} (N alpha + i) / (N a).
inline std::vector<Real> gamma_moments(Real a, Real alpha, long N, int T) {
    std::vector<Real> out(T + 1);
    out[0] = 1;
    for (int t = 1; t <= T; ++t) out[t] = out[t - 1] * (N * alpha + t) / (N * a);
    return out;
}

class MopOracle {
public:
    // moments[j][t] = integral of x^t against weight j.
    explicit MopOracle(std::vector<std::vector<Real>> moments) : mu_(std::move(moments)) {}

    const Poly& poly(const std::vector<int>& n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        int D = 0;
        for (int x : n) D += x;
        Poly p(D + 1, 0);
        p[D] = 1;
        if (D > 0) {
            Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> A(D, D);
            Eigen::Matrix<Real, Eigen::Dynamic, 1> rhs(D);
            int row = 0;
            for (std::size_t j = 0; j < n.size(); ++j)
                for (int t = 0; t < n[j]; ++t, ++row) {
                    for (int c = 0; c < D; ++c) A(row, c) = mu_[j].at(t + c);
                    rhs(row) = -mu_[j].at(t + D);
                }
            const Eigen::Matrix<Real, Eigen::Dynamic, 1> sol = A.fullPivLu().solve(rhs);
            for (int c = 0; c < D; ++c) p[c] = sol(c);
        }
        return cache_.emplace(n, std::move(p)).first->second;
    }

private:
    std::vector<std::vector<Real>> mu_;
    std::map<std::vector<int>, Poly> cache_;
};

inline Poly times_x(const Poly& p) {
    Poly out(p.size() + 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i];
    return out;
}

// Coefficients c_m with f = sum_m c_m basis[m], for monic basis[m] of degree m.
inline std::vector<Real> expand(Poly f, const std::vector<Poly>& basis) {
    std::vector<Real> c(f.size(), 0);
    for (int m = static_cast<int>(f.size()) - 1; m >= 0; --m) {
        c[m] = f[m];
        for (int i = 0; i <= m; ++i) f[i] -= c[m] * basis[m][i];
    }
    return c;
}

}  // namespace oracle
