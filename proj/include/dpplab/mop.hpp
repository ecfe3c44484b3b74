#pragma once

#include "dpplab/recurrence.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dpplab {

/// Nested multi-indices n^(0), n^(1), ..., n^(N_max) in N^r with |n^(N)| = N,
/// obtained by adding one unit vector per step. Also records the smallest
/// refresh length R such that every coordinate grows within any R steps.
class MultiIndexPath {
public:
    /// `steps[k]` is the coordinate incremented to go from n^(k) to n^(k+1).
    MultiIndexPath(std::vector<double> ratios, std::vector<int> steps);

    int r() const { return static_cast<int>(ratios_.size()); }
    const std::vector<double>& ratios() const { return ratios_; }
    long max_index() const { return static_cast<long>(steps_.size()); }
    std::span<const int> at(long N) const;
    int step(long k) const;
    /// Smallest R with n^(N+R) >= n^(N) + 1 for all N where this is decidable.
    int refresh() const { return refresh_; }

private:
    std::vector<double> ratios_;
    std::vector<int> steps_;
    std::vector<int> table_;  // (max_index + 1) x r
    int refresh_ = 1;
};

/// Greedy path: step N increments the coordinate d maximising q_d N - n_d
/// (lowest index on ties). Throws if the refresh length exceeds ceil(1 / min q).
MultiIndexPath path_from_ratios(std::vector<double> ratios, long N_max);

/// Cyclic path 0, 1, ..., r-1, 0, 1, ... with equal ratios.
MultiIndexPath path_round_robin(int r, long N_max);

/// Nearest-neighbour recurrence coefficients at one multi-index:
///   x P_n = P_{n+e_d} + same[d] P_n + sum_j down[j] P_{n-e_j}.
struct NNCoefficients {
    std::vector<double> same;
    std::vector<double> down;
};

using NNCoefficientFunction = std::function<NNCoefficients(std::span<const int> n, long N)>;

/// Multiple Hermite, weights exp(-N x^2 / 2 + N a_d x): same = a_d, down = n_d / N.
NNCoefficients nn_coeffs_hermite(std::span<const int> n, long N, std::span<const double> a);

/// Multiple Laguerre (second kind), weights x^{N alpha} exp(-N a_d x):
///   same = (|n| + N alpha + 1) / (N a_d) + sum_j n_j / (N a_j),
///   down = n_d (|n| + N alpha) / (N a_d)^2.
NNCoefficients nn_coeffs_laguerre(std::span<const int> n, long N, double alpha, std::span<const double> a);

struct BandedEntry {
    long m;
    double value;
};

/// Row k of the multiplication operator in the monic MOP basis P_k = P_{n^(k)}:
/// m = k + 1 gives 1, m = k gives same[i_k], and lower entries come from
/// rewriting P_{n^(k) - e_d} along the path with the relation between
/// neighbouring MOPs. Entries for m < k - R vanish and are omitted.
std::vector<BandedEntry> banded_entries(const MultiIndexPath& path, const NNCoefficientFunction& coeffs, long k,
                                        long N);

enum class MopKind { Hermite, Laguerre };

struct MopParams {
    std::vector<double> a;
    double alpha = 0.0;  // Laguerre only
};

void validate(MopKind kind, const MopParams& params);
NNCoefficientFunction nn_coefficients(MopKind kind, const MopParams& params);

/// Scheme with upper band 1 and lower band path.refresh(). Entries are defined
/// for column indices k < path.max_index().
RecurrenceScheme mop_scheme(MopKind kind, const MopParams& params, const MultiIndexPath& path);

MopKind mop_kind_from_name(const std::string& name);

}  // namespace dpplab
