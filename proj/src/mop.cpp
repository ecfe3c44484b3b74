#include "dpplab/mop.hpp"

#include "dpplab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dpplab {

namespace {

void validate_ratios(const std::vector<double>& q) {
    require(q.size() >= 2, "path: need at least two ratios");
    for (double x : q) require(x > 0.0 && x < 1.0, "path: ratios must lie in (0, 1)");
    const double total = std::accumulate(q.begin(), q.end(), 0.0);
    require(std::abs(total - 1.0) <= 1e-12, "path: ratios must sum to 1");
}

}  // namespace

MultiIndexPath::MultiIndexPath(std::vector<double> ratios, std::vector<int> steps)
    : ratios_(std::move(ratios)), steps_(std::move(steps)) {
    validate_ratios(ratios_);
    const int r = this->r();
    table_.assign((steps_.size() + 1) * r, 0);
    for (std::size_t k = 0; k < steps_.size(); ++k) {
        require(steps_[k] >= 0 && steps_[k] < r, "path: step coordinate out of range");
        std::copy_n(table_.begin() + k * r, r, table_.begin() + (k + 1) * r);
        ++table_[(k + 1) * r + steps_[k]];
    }
    // Refresh length: for each start N, the number of steps until every
    // coordinate has been incremented once. Starts too close to the end are skipped.
    refresh_ = 1;
    const long K = static_cast<long>(steps_.size());
    for (long N = 0; N < K; ++N) {
        std::vector<bool> seen(r, false);
        int remaining = r;
        long j = N;
        for (; j < K && remaining > 0; ++j)
            if (!seen[steps_[j]]) {
                seen[steps_[j]] = true;
                --remaining;
            }
        if (remaining > 0) break;
        refresh_ = std::max<int>(refresh_, static_cast<int>(j - N));
    }
}

std::span<const int> MultiIndexPath::at(long N) const {
    require(N >= 0 && N <= max_index(), "path: index " + std::to_string(N) + " beyond path length");
    return {table_.data() + N * r(), static_cast<std::size_t>(r())};
}

int MultiIndexPath::step(long k) const {
    require(k >= 0 && k < max_index(), "path: step " + std::to_string(k) + " unavailable (path too short)");
    return steps_[k];
}

MultiIndexPath path_from_ratios(std::vector<double> ratios, long N_max) {
    for (double x : ratios) require(x > 0.0, "path_from_ratios: degenerate ratio (<= 0)");
    validate_ratios(ratios);
    require(N_max >= 0, "path_from_ratios: N_max must be >= 0");
    const int r = static_cast<int>(ratios.size());
    std::vector<int> n(r, 0), steps;
    steps.reserve(N_max);
    for (long N = 0; N < N_max; ++N) {
        int best = 0;
        double best_deficit = -1e300;
        for (int d = 0; d < r; ++d) {
            const double deficit = ratios[d] * static_cast<double>(N) - n[d];
            if (deficit > best_deficit + 1e-12) {
                best = d;
                best_deficit = deficit;
            }
        }
        ++n[best];
        steps.push_back(best);
    }
    MultiIndexPath path(std::move(ratios), std::move(steps));
    const double qmin = *std::min_element(path.ratios().begin(), path.ratios().end());
    const int bound = static_cast<int>(std::ceil(1.0 / qmin - 1e-12));
    if (path.refresh() > bound)
        throw NumericalError("path_from_ratios: refresh length " + std::to_string(path.refresh()) +
                             " exceeds ceil(1/min q) = " + std::to_string(bound));
    return path;
}

MultiIndexPath path_round_robin(int r, long N_max) {
    require(r >= 2, "path_round_robin: r must be >= 2");
    std::vector<int> steps(N_max);
    for (long k = 0; k < N_max; ++k) steps[k] = static_cast<int>(k % r);
    return MultiIndexPath(std::vector<double>(r, 1.0 / r), std::move(steps));
}

NNCoefficients nn_coeffs_hermite(std::span<const int> n, long N, std::span<const double> a) {
    require(n.size() == a.size(), "nn_coeffs_hermite: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            require(a[i] != a[j], "nn_coeffs_hermite: repeated a_d values (normality fails)");
    NNCoefficients c;
    c.same.assign(a.begin(), a.end());
    c.down.resize(n.size());
    for (std::size_t d = 0; d < n.size(); ++d) {
        require(n[d] == 0 || N >= 1, "nn_coeffs_hermite: N must be >= 1");
        c.down[d] = n[d] == 0 ? 0.0 : static_cast<double>(n[d]) / static_cast<double>(N);
    }
    return c;
}

NNCoefficients nn_coeffs_laguerre(std::span<const int> n, long N, double alpha, std::span<const double> a) {
    require(n.size() == a.size(), "nn_coeffs_laguerre: dimension mismatch");
    require(alpha >= 0.0, "nn_coeffs_laguerre: alpha must be >= 0");
    require(N >= 1, "nn_coeffs_laguerre: N must be >= 1");
    for (std::size_t i = 0; i < a.size(); ++i) {
        require(a[i] > 0.0, "nn_coeffs_laguerre: a_d must be > 0");
        for (std::size_t j = i + 1; j < a.size(); ++j)
            require(a[i] != a[j], "nn_coeffs_laguerre: repeated a_d values (normality fails)");
    }
    const double Nd = static_cast<double>(N);
    const double total = std::accumulate(n.begin(), n.end(), 0.0);
    double shared = 0.0;
    for (std::size_t j = 0; j < n.size(); ++j) shared += n[j] / (Nd * a[j]);
    NNCoefficients c;
    c.same.resize(n.size());
    c.down.resize(n.size());
    for (std::size_t d = 0; d < n.size(); ++d) {
        c.same[d] = (total + Nd * alpha + 1.0) / (Nd * a[d]) + shared;
        c.down[d] = n[d] * (total + Nd * alpha) / (Nd * a[d] * Nd * a[d]);
    }
    return c;
}

std::vector<BandedEntry> banded_entries(const MultiIndexPath& path, const NNCoefficientFunction& coeffs, long k,
                                        long N) {
    require(k >= 0, "banded_entries: k must be >= 0");
    const int r = path.r();
    const int R = path.refresh();
    const int ik = path.step(k);
    const std::span<const int> nk = path.at(k);
    const NNCoefficients ck = coeffs(nk, N);

    // acc[j] holds the coefficient of P_{k-1-j}.
    std::vector<double> acc(static_cast<std::size_t>(std::min<long>(k, R)), 0.0);
    std::vector<int> shifted(r);
    for (int d = 0; d < r; ++d) {
        if (nk[d] == 0 || ck.down[d] == 0.0) continue;
        double coef = ck.down[d];
        acc[0] += coef;
        // P_{n^(l+1) - e_d} = P_l + (same_d - same_{i_l})(n^(l) - e_d) P_{n^(l) - e_d},
        // terminating at the step that incremented coordinate d.
        for (long l = k - 1; l >= 0; --l) {
            const int il = path.step(l);
            if (il == d) break;
            const std::span<const int> nl = path.at(l);
            std::copy(nl.begin(), nl.end(), shifted.begin());
            --shifted[d];
            const NNCoefficients cl = coeffs(shifted, N);
            coef *= cl.same[d] - cl.same[il];
            const long m = l - 1;
            if (coef == 0.0) break;
            if (k - 1 - m >= static_cast<long>(acc.size()))
                throw NumericalError("banded_entries: nonzero entry below the declared band at k=" +
                                     std::to_string(k));
            acc[k - 1 - m] += coef;
        }
    }

    std::vector<BandedEntry> row;
    for (long j = static_cast<long>(acc.size()) - 1; j >= 0; --j) row.push_back({k - 1 - j, acc[j]});
    row.push_back({k, ck.same[ik]});
    row.push_back({k + 1, 1.0});
    return row;
}

void validate(MopKind kind, const MopParams& params) {
    require(params.a.size() >= 1, "mop: need at least one a_d");
    const std::vector<int> zero(params.a.size(), 0);
    if (kind == MopKind::Hermite)
        nn_coeffs_hermite(zero, 1, params.a);
    else
        nn_coeffs_laguerre(zero, 1, params.alpha, params.a);
}

NNCoefficientFunction nn_coefficients(MopKind kind, const MopParams& params) {
    validate(kind, params);
    if (kind == MopKind::Hermite)
        return [a = params.a](std::span<const int> n, long N) { return nn_coeffs_hermite(n, N, a); };
    return [a = params.a, alpha = params.alpha](std::span<const int> n, long N) {
        return nn_coeffs_laguerre(n, N, alpha, a);
    };
}

RecurrenceScheme mop_scheme(MopKind kind, const MopParams& params, const MultiIndexPath& path) {
    require(params.a.size() == static_cast<std::size_t>(path.r()), "mop_scheme: a and path dimension mismatch");
    NNCoefficientFunction coeffs = nn_coefficients(kind, params);
    std::map<std::string, double> named;
    for (std::size_t d = 0; d < params.a.size(); ++d) {
        named["a" + std::to_string(d + 1)] = params.a[d];
        named["q" + std::to_string(d + 1)] = path.ratios()[d];
    }
    if (kind == MopKind::Laguerre) named["alpha"] = params.alpha;
    auto entry = [path, coeffs](long m, long k, long N) {
        for (const BandedEntry& e : banded_entries(path, coeffs, k, N))
            if (e.m == m) return e.value;
        return 0.0;
    };
    return RecurrenceScheme(kind == MopKind::Hermite ? "multiple-hermite" : "multiple-laguerre", std::move(named),
                            path.refresh(), 1, entry);
}

MopKind mop_kind_from_name(const std::string& name) {
    if (name == "hermite" || name == "multiple-hermite") return MopKind::Hermite;
    if (name == "laguerre" || name == "multiple-laguerre") return MopKind::Laguerre;
    throw InvalidArgument("unknown MOP kind '" + name + "'");
}

}  // namespace dpplab
