#pragma once

#include <vector>

namespace dpplab {

/// Truncated formal Laurent series sum_i coeffs[i] z^(offset + i). Terms of
/// degree offset + coeffs.size() and above are unknown.
struct FormalSeries {
    std::vector<double> coeffs;
    int offset = 0;

    int precision() const { return offset + static_cast<int>(coeffs.size()); }
    /// Coefficient of z^power; zero below the offset. Throws beyond the precision.
    double at(int power) const;
};

FormalSeries operator+(const FormalSeries& f, const FormalSeries& g);
FormalSeries operator-(const FormalSeries& f, const FormalSeries& g);
FormalSeries operator*(const FormalSeries& f, const FormalSeries& g);
FormalSeries operator*(double c, FormalSeries f);

/// Multiplies by z^k.
FormalSeries shift(FormalSeries f, int k);
/// Drops terms of degree >= precision.
FormalSeries truncate(FormalSeries f, int precision);

/// 1/f; requires a nonzero leading coefficient.
FormalSeries reciprocal(const FormalSeries& f);

/// f(g) for a power series f (offset >= 0) and g with offset >= 1.
FormalSeries compose(const FormalSeries& f, const FormalSeries& g);

/// Compositional inverse of f = c1 z + c2 z^2 + ... with c1 != 0, by Lagrange
/// inversion: [w^n] f^{-1} = (1/n) [z^{n-1}] (z / f)^n.
FormalSeries series_compose_inverse(const FormalSeries& f);

}  // namespace dpplab
