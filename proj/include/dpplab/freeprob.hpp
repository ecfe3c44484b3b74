#pragma once

#include "dpplab/measures.hpp"
#include "dpplab/series.hpp"

namespace dpplab {

/// R-transform kappa_1 + kappa_2 w + ... + kappa_L w^{L-1} (free cumulants) from m_0..m_L.
/// Obtained by inverting G(z) = sum_k m_k z^{-k-1} as a series in 1/z.
FormalSeries r_transform(const MomentSequence& m);

/// Moments m_0..L from an R-transform with at least L coefficients.
MomentSequence moments_from_r(const FormalSeries& r, int L);

/// S-transform S(z) = (1 + z) chi(z) / z where chi inverts psi(z) = sum_{k>=1} m_k z^k.
/// Requires m_1 != 0; the result has L coefficients.
FormalSeries s_transform(const MomentSequence& m);

/// Moments m_0..L of the law with the given S-transform (at least L coefficients).
MomentSequence moments_from_s(const FormalSeries& s, int L);

/// Free additive convolution on moments; uses the shorter of the two sequences.
MomentSequence free_add(const MomentSequence& mu, const MomentSequence& nu);

/// Free multiplicative convolution on moments. Both laws must have m_1 > 0;
/// each is rescaled to unit mean before its S-transform is formed.
MomentSequence free_mul(const MomentSequence& mu, const MomentSequence& nu);

}  // namespace dpplab
