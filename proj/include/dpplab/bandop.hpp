#pragma once

#include "dpplab/banded.hpp"
#include "dpplab/recurrence.hpp"

#include <vector>

namespace dpplab {

/// Finite window of the multiplication operator: rows/columns 0 .. N + ext - 1.
/// With ext = q * ell_max every closed path of length <= ell_max started below
/// N stays inside the window, so traces up to that length are exact.
class BandedOperator {
public:
    BandedOperator(long N, long ext, int lower_band, int upper_band, BandMatrix matrix);

    long N() const { return N_; }
    long ext() const { return ext_; }
    int lower_band() const { return R_; }
    int upper_band() const { return q_; }
    /// Full (N + ext) x (N + ext) window; element (m, k) is entry(m, k, N).
    const BandMatrix& matrix() const { return matrix_; }
    /// The N x N principal block.
    BandMatrix principal_block() const { return matrix_.leading_block(static_cast<int>(N_)); }

private:
    long N_;
    long ext_;
    int R_;
    int q_;
    BandMatrix matrix_;
};

BandedOperator build_truncation(const RecurrenceScheme& scheme, long N, int ell_max);

/// (1/N) Tr(pi_N M^ell pi_N): mean of the ell-th empirical moment.
double mean_moment(const RecurrenceScheme& scheme, long N, int ell);
/// (1/N) Tr((pi_N M pi_N)^ell): ell-th moment of the zero counting measure.
double zero_moment_trace(const RecurrenceScheme& scheme, long N, int ell);
/// (1/N^2) (Tr(pi M^{2 ell} pi) - Tr(pi M^ell pi M^ell pi)): variance of the ell-th empirical moment.
double variance_moment(const RecurrenceScheme& scheme, long N, int ell);

enum class PathConstraint {
    None,             // all closed paths
    AvoidDN,          // paths never reaching an ordinate >= N
    MidpointAtOrAbove // paths of length 2 ell whose ordinate at abscissa ell is >= N
};

struct LatticePathQuery {
    long N;
    int ell;
    PathConstraint constraint = PathConstraint::None;
};

/// Brute-force weighted path enumeration on the lattice graph; independent of
/// the matrix-power route. Limited to ell <= 8 and N <= 64.
double lattice_sum(const RecurrenceScheme& scheme, const LatticePathQuery& query);

/// Unnormalised path sums per starting ordinate k = 0 .. N - 1.
std::vector<double> lattice_sums_per_start(const RecurrenceScheme& scheme, const LatticePathQuery& query);

/// max |entry(m, k, N)| over |k/N - 1| <= eps and |m/N - 1| <= eps.
double window_max(const RecurrenceScheme& scheme, long N, double eps);

/// Upper bound on |mean_moment - zero_moment_trace| from counting escaping paths.
double gap_bound(const RecurrenceScheme& scheme, long N, int ell);
/// Upper bound on variance_moment from counting paths through the midpoint window.
double variance_bound(const RecurrenceScheme& scheme, long N, int ell);

}  // namespace dpplab
