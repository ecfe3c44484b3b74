#pragma once

#include "dpplab/measures.hpp"
#include "dpplab/zeros.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dpplab {

enum class MatrixModelKind { Gue, Wishart, GueSource, WishartCov };

MatrixModelKind matrix_model_from_name(const std::string& name);
std::string to_string(MatrixModelKind kind);

struct MatrixModelSpec {
    MatrixModelKind kind = MatrixModelKind::Gue;
    long N = 1;
    double alpha = 0.0;          // wishart kinds; N alpha must be an integer
    std::vector<double> source;  // length-N diagonal for gue_source / wishart_cov
};

void validate(const MatrixModelSpec& spec);

/// Length-N diagonal holding each atom location with multiplicity n_d^(N) from
/// the greedy path of the atom weights. A single atom fills the whole diagonal.
std::vector<double> source_diagonal(const AtomicMeasure& atoms, long N);

/// Seed of sample `counter`: splitmix64(splitmix64(seed) ^ counter).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

/// Eigenvalues of one draw, ascending. Gaussians come from Box-Muller on a
/// mt19937_64 stream seeded with `seed`, so the draw count is fixed by the model.
SpectralMeasure sample_spectrum(const MatrixModelSpec& spec, std::uint64_t seed);

/// Per-sample empirical moments (1/N) sum x_i^l, l = 0..L; row s uses derive_seed(seed, s).
std::vector<std::vector<double>> sample_moments(const MatrixModelSpec& spec, int L, long samples,
                                                std::uint64_t seed);

struct McMoments {
    MomentSequence mean;
    std::vector<double> variance;        // unbiased sample variance per l
    std::vector<double> standard_error;  // sqrt(variance / samples)
};

/// Aggregates sample_moments with pairwise summation over samples in index order.
McMoments mc_moments(const MatrixModelSpec& spec, int L, long samples, std::uint64_t seed);

}  // namespace dpplab
