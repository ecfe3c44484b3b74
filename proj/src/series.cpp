#include "dpplab/series.hpp"

#include "dpplab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpplab {

double FormalSeries::at(int power) const {
    if (power < offset) return 0.0;
    require(power < precision(), "series: coefficient of z^" + std::to_string(power) + " beyond precision");
    return coeffs[power - offset];
}

namespace {

FormalSeries combine(const FormalSeries& f, const FormalSeries& g, double sign) {
    const int lo = std::min(f.offset, g.offset);
    const int hi = std::min(f.precision(), g.precision());
    FormalSeries out;
    out.offset = lo;
    for (int p = lo; p < hi; ++p) out.coeffs.push_back(f.at(p) + sign * g.at(p));
    return out;
}

}  // namespace

FormalSeries operator+(const FormalSeries& f, const FormalSeries& g) { return combine(f, g, 1.0); }
FormalSeries operator-(const FormalSeries& f, const FormalSeries& g) { return combine(f, g, -1.0); }

FormalSeries operator*(const FormalSeries& f, const FormalSeries& g) {
    const std::size_t n = std::min(f.coeffs.size(), g.coeffs.size());
    FormalSeries out;
    out.offset = f.offset + g.offset;
    out.coeffs.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j) out.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
    return out;
}

FormalSeries operator*(double c, FormalSeries f) {
    for (double& x : f.coeffs) x *= c;
    return f;
}

FormalSeries shift(FormalSeries f, int k) {
    f.offset += k;
    return f;
}

FormalSeries truncate(FormalSeries f, int precision) {
    if (precision < f.precision()) f.coeffs.resize(static_cast<std::size_t>(std::max(0, precision - f.offset)));
    return f;
}

FormalSeries reciprocal(const FormalSeries& f) {
    require(!f.coeffs.empty() && f.coeffs[0] != 0.0, "series reciprocal: leading coefficient is zero");
    const std::size_t n = f.coeffs.size();
    FormalSeries out;
    out.offset = -f.offset;
    out.coeffs.assign(n, 0.0);
    out.coeffs[0] = 1.0 / f.coeffs[0];
    for (std::size_t k = 1; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += f.coeffs[j] * out.coeffs[k - j];
        out.coeffs[k] = -s / f.coeffs[0];
    }
    return out;
}

FormalSeries compose(const FormalSeries& f, const FormalSeries& g) {
    require(f.offset >= 0, "series compose: outer series must be a power series");
    require(g.offset >= 1, "series compose: inner series must have zero constant term");
    const int limit = std::min(g.precision(), f.precision() * g.offset);
    if (limit <= 0) return {};
    std::vector<double> out(limit, 0.0), power(limit, 0.0), next(limit);
    power[0] = 1.0;
    for (int k = 0; k < f.precision() && k * g.offset < limit; ++k) {
        const double c = f.at(k);
        for (int p = 0; p < limit; ++p) out[p] += c * power[p];
        std::fill(next.begin(), next.end(), 0.0);
        for (int p = 0; p < limit; ++p) {
            if (power[p] == 0.0) continue;
            for (int j = 0; j < static_cast<int>(g.coeffs.size()) && p + g.offset + j < limit; ++j)
                next[p + g.offset + j] += power[p] * g.coeffs[j];
        }
        power.swap(next);
    }
    return {std::move(out), 0};
}

FormalSeries series_compose_inverse(const FormalSeries& f) {
    require(f.offset == 1, "series inverse: series must start at z^1");
    require(!f.coeffs.empty() && f.coeffs[0] != 0.0, "series inverse: linear coefficient is zero");
    const int n = static_cast<int>(f.coeffs.size());
    // z / f as a power series of length n.
    const FormalSeries base = reciprocal(shift(f, -1));
    FormalSeries out;
    out.offset = 1;
    out.coeffs.assign(n, 0.0);
    FormalSeries power{std::vector<double>(n, 0.0), 0};
    power.coeffs[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        power = power * base;
        out.coeffs[k - 1] = power.coeffs[k - 1] / k;
    }
    return out;
}

}  // namespace dpplab
