#include "dpplab/bandop.hpp"

#include "dpplab/error.hpp"
#include "dpplab/parallel.hpp"
#include "dpplab/summation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpplab {

BandedOperator::BandedOperator(long N, long ext, int lower_band, int upper_band, BandMatrix matrix)
    : N_(N), ext_(ext), R_(lower_band), q_(upper_band), matrix_(std::move(matrix)) {
    require(N_ >= 1, "BandedOperator: N must be >= 1");
    require(ext_ >= 0, "BandedOperator: ext must be >= 0");
    require(matrix_.size() == N_ + ext_, "BandedOperator: storage size mismatch");
}

BandedOperator build_truncation(const RecurrenceScheme& scheme, long N, int ell_max) {
    require(N >= 1, "build_truncation: N must be >= 1");
    require(ell_max >= 0, "build_truncation: ell_max must be >= 0");
    const int R = scheme.lower_band();
    const int q = scheme.upper_band();
    const long ext = static_cast<long>(q) * ell_max;
    const int size = static_cast<int>(N + ext);
    // Row index m, column index k: m - k in [-R, q].
    BandMatrix mat(size, q, R);
    for (int k = 0; k < size; ++k) {
        for (int m = std::max(0, k - R); m <= std::min(size - 1, k + q); ++m) {
            const double v = scheme.entry(m, k, N);
            if (!std::isfinite(v))
                throw NumericalError("build_truncation: non-finite entry(" + std::to_string(m) + ", " +
                                     std::to_string(k) + ", N=" + std::to_string(N) + ") in scheme '" +
                                     scheme.name() + "'");
            if (v != 0.0) mat.at(m, k) = v;
        }
    }
    return BandedOperator(N, ext, R, q, std::move(mat));
}

namespace {

double leading_trace(const BandMatrix& m, long n) {
    CompensatedSum s;
    for (int k = 0; k < n; ++k) s.add(m(k, k));
    return s.value();
}

}  // namespace

double mean_moment(const RecurrenceScheme& scheme, long N, int ell) {
    require(ell >= 0, "mean_moment: ell must be >= 0");
    if (ell == 0) return 1.0;
    const BandedOperator op = build_truncation(scheme, N, ell);
    return leading_trace(op.matrix().power(ell), N) / static_cast<double>(N);
}

double zero_moment_trace(const RecurrenceScheme& scheme, long N, int ell) {
    require(ell >= 0, "zero_moment_trace: ell must be >= 0");
    if (ell == 0) return 1.0;
    const BandedOperator op = build_truncation(scheme, N, 0);
    return leading_trace(op.principal_block().power(ell), N) / static_cast<double>(N);
}

double variance_moment(const RecurrenceScheme& scheme, long N, int ell) {
    require(ell >= 0, "variance_moment: ell must be >= 0");
    if (ell == 0) return 0.0;
    const BandedOperator op = build_truncation(scheme, N, 2 * ell);
    const BandMatrix B = op.matrix().power(ell);
    const BandMatrix A = B * B;
    CompensatedSum s;
    for (int k = 0; k < N; ++k) s.add(A(k, k));
    for (int k = 0; k < N; ++k) {
        const int lo = std::max(0, k - B.sub());
        const int hi = std::min(static_cast<int>(N) - 1, k + B.super());
        for (int m = lo; m <= hi; ++m) s.add(-B(k, m) * B(m, k));
    }
    return s.value() / (static_cast<double>(N) * static_cast<double>(N));
}

namespace {

// Edge weights for ordinates 0 .. height-1, read straight from the scheme.
struct EdgeTable {
    int R;
    int q;
    long height;
    std::vector<double> w;  // w[h * (R + q + 1) + (h' - h + R)]

    EdgeTable(const RecurrenceScheme& scheme, long N, long height_)
        : R(scheme.lower_band()), q(scheme.upper_band()), height(height_) {
        w.assign(static_cast<std::size_t>(height) * (R + q + 1), 0.0);
        for (long h = 0; h < height; ++h)
            for (long h2 = std::max(0L, h - R); h2 <= h + q; ++h2)
                w[h * (R + q + 1) + (h2 - h + R)] = scheme.entry(h2, h, N);
    }
    double operator()(long h, long h2) const { return w[h * (R + q + 1) + (h2 - h + R)]; }
};

struct PathWalker {
    const EdgeTable& edges;
    long N;
    long start;
    int length;
    int midpoint;  // abscissa at which the ordinate must be >= N, or -1
    bool avoid;

    // Sum over continuations from ordinate h at abscissa n with accumulated weight.
    void walk(long h, int n, double weight, CompensatedSum& acc) const {
        if (midpoint >= 0 && n == midpoint && h < N) return;
        if (n == length) {
            if (h == start) acc.add(weight);
            return;
        }
        const int remaining = length - n;
        for (long h2 = std::max(0L, h - edges.R); h2 <= h + edges.q; ++h2) {
            if (avoid && h2 >= N) break;
            const int rem2 = remaining - 1;
            // Must still be able to return to the start.
            if (h2 > start && h2 - start > static_cast<long>(edges.R) * rem2) continue;
            if (h2 < start && start - h2 > static_cast<long>(edges.q) * rem2) continue;
            if (midpoint >= 0 && n + 1 <= midpoint && h2 + static_cast<long>(edges.q) * (midpoint - n - 1) < N)
                continue;
            const double e = edges(h, h2);
            if (e == 0.0) continue;
            walk(h2, n + 1, weight * e, acc);
        }
    }
};

}  // namespace

std::vector<double> lattice_sums_per_start(const RecurrenceScheme& scheme, const LatticePathQuery& query) {
    require(query.ell >= 0, "lattice_sum: ell must be >= 0");
    require(query.N >= 1, "lattice_sum: N must be >= 1");
    require(query.ell <= 8 && query.N <= 64, "lattice_sum: oracle limited to ell <= 8 and N <= 64");
    const bool midpoint = query.constraint == PathConstraint::MidpointAtOrAbove;
    const int length = midpoint ? 2 * query.ell : query.ell;
    const long height = query.N + static_cast<long>(scheme.upper_band()) * length + 1;
    const EdgeTable edges(scheme, query.N, height);

    std::vector<double> sums(static_cast<std::size_t>(query.N), 0.0);
    parallel_for(sums.size(), [&](std::size_t k) {
        PathWalker walker{edges, query.N, static_cast<long>(k), length, midpoint ? query.ell : -1,
                          query.constraint == PathConstraint::AvoidDN};
        CompensatedSum acc;
        walker.walk(static_cast<long>(k), 0, 1.0, acc);
        sums[k] = acc.value();
    });
    return sums;
}

double lattice_sum(const RecurrenceScheme& scheme, const LatticePathQuery& query) {
    const std::vector<double> sums = lattice_sums_per_start(scheme, query);
    CompensatedSum total;
    for (double s : sums) total.add(s);
    double norm = static_cast<double>(query.N);
    if (query.constraint == PathConstraint::MidpointAtOrAbove) norm *= static_cast<double>(query.N);
    return total.value() / norm;
}

double window_max(const RecurrenceScheme& scheme, long N, double eps) {
    require(eps > 0.0, "window_max: eps must be > 0");
    require(N >= 1, "window_max: N must be >= 1");
    const long radius = static_cast<long>(std::floor(eps * static_cast<double>(N) + 1e-9));
    const long lo = std::max(0L, N - radius);
    const long hi = N + radius;
    double best = 0.0;
    for (long k = lo; k <= hi; ++k) {
        const long mlo = std::max(lo, k - scheme.lower_band());
        const long mhi = std::min(hi, k + static_cast<long>(scheme.upper_band()));
        for (long m = mlo; m <= mhi; ++m) best = std::max(best, std::abs(scheme.entry(m, k, N)));
    }
    return best;
}

double gap_bound(const RecurrenceScheme& scheme, long N, int ell) {
    require(ell >= 0, "gap_bound: ell must be >= 0");
    if (ell == 0) return 0.0;
    const double q = scheme.upper_band();
    const double radius = q * ell / static_cast<double>(N);
    return std::pow(2.0 * q * ell, ell) / static_cast<double>(N) * std::pow(window_max(scheme, N, radius), ell);
}

double variance_bound(const RecurrenceScheme& scheme, long N, int ell) {
    require(ell >= 0, "variance_bound: ell must be >= 0");
    if (ell == 0) return 0.0;
    const double q = scheme.upper_band();
    const double radius = 2.0 * q * ell / static_cast<double>(N);
    const double n = static_cast<double>(N);
    return std::pow(4.0 * q * ell, 2 * ell) / (n * n) * std::pow(window_max(scheme, N, radius), 2 * ell);
}

}  // namespace dpplab
