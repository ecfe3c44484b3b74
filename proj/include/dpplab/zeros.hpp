#pragma once

#include "dpplab/bandop.hpp"
#include "dpplab/measures.hpp"

#include <complex>
#include <vector>

namespace dpplab {

/// Uniform probability measure on a list of (possibly complex) points.
struct SpectralMeasure {
    std::vector<std::complex<double>> points;  // sorted by real part, then imaginary part
};

/// Zeros of the average characteristic polynomial: eigenvalues of the N x N
/// principal block. Symmetric tridiagonal blocks go to a symmetric solver,
/// everything else is balanced and handed to a real Schur (Francis QR) solver.
/// For Hessenberg blocks the QR eigenvalues then seed a sign-change search on
/// det(x I - A): when N sign changes are found the zeros are real and are
/// bisected to full precision, otherwise the QR eigenvalues are returned.
SpectralMeasure spectrum(const BandedOperator& op);

/// Same, for an explicit dense matrix (used for hand-built test matrices).
SpectralMeasure spectrum_dense(const Eigen::MatrixXd& block);

struct ZeroMoments {
    MomentSequence moments;           // (1/N) sum Re z_i^ell
    std::vector<double> imag_residual;  // (1/N) sum Im z_i^ell, surfaced rather than dropped
};

ZeroMoments zero_moments(const SpectralMeasure& sm, int L);

struct RealityReport {
    bool real;
    double max_imag;
};

RealityReport reality_check(const SpectralMeasure& sm, double tol);

/// det(z I - principal block). When the value overflows a double, `overflow`
/// is set and only log_abs / phase are meaningful.
struct CharpolyValue {
    std::complex<double> value;
    double log_abs;
    double phase;
    bool overflow;
};

CharpolyValue charpoly_eval(const BandedOperator& op, std::complex<double> z);

/// Diagonal similarity scaling by powers of two so that row and column norms
/// are comparable. Eigenvalues are unchanged.
Eigen::MatrixXd balance(Eigen::MatrixXd a);

}  // namespace dpplab
