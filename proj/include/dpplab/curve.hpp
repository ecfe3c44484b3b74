#pragma once

#include "dpplab/measures.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace dpplab {

/// Real polynomial in (z, w); coefficient (i, j) multiplies z^i w^j.
class BivariatePolynomial {
public:
    BivariatePolynomial() : c_(Eigen::MatrixXd::Zero(1, 1)) {}
    explicit BivariatePolynomial(Eigen::MatrixXd coeffs);

    static BivariatePolynomial constant(double c);
    static BivariatePolynomial z();
    static BivariatePolynomial w();

    int degree_z() const { return static_cast<int>(c_.rows()) - 1; }
    int degree_w() const { return static_cast<int>(c_.cols()) - 1; }
    const Eigen::MatrixXd& coefficients() const { return c_; }

    /// Coefficients (ascending in w) of w -> P(z, w) at fixed z.
    std::vector<std::complex<double>> in_w(std::complex<double> z) const;
    std::complex<double> operator()(std::complex<double> z, std::complex<double> w) const;
    std::complex<double> dz(std::complex<double> z, std::complex<double> w) const;
    std::complex<double> dw(std::complex<double> z, std::complex<double> w) const;

    friend BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b);
    friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b);
    friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);
    friend BivariatePolynomial operator*(double s, const BivariatePolynomial& a);

private:
    Eigen::MatrixXd c_;
};

/// Polynomial relation P(z, G(z)) = 0 satisfied by the Cauchy transform of a law.
struct AlgebraicCurve {
    BivariatePolynomial poly;
    /// All of the support lies in the disc of this radius.
    double support_radius = 0.0;
    std::vector<Atom> atoms;
};

/// How the product inside the sum is indexed. JIndexed uses the factor of each
/// j != i (subordination form); Verbatim repeats the i-th factor r - 1 times.
enum class IndexReading { JIndexed, Verbatim };

/// Semicircle plus the atomic law sum q_i delta_{a_i}:
///   w prod_j (z - w - a_j) - sum_i q_i prod_{j != i} (z - w - a_j) = 0.
AlgebraicCurve curve_hermite(std::span<const double> q, std::span<const double> a,
                             IndexReading reading = IndexReading::JIndexed);

/// Law with S-transform 1 / (1 + alpha z) times the atomic law sum q_i delta_{1/a_i}:
///   w prod_j (z - (1 - alpha + alpha z w) / a_j) - sum_i q_i prod_{j != i} (...) = 0.
AlgebraicCurve curve_laguerre(std::span<const double> q, std::span<const double> a, double alpha,
                              IndexReading reading = IndexReading::JIndexed);

/// Roots of sum_k c[k] w^k (ascending), from the companion matrix with a Newton polish.
/// Leading coefficients that are negligible relative to the largest are dropped.
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> c);

/// Branch of the curve with G(z) ~ 1/z at infinity, continued from Re z + i H sign(Im z)
/// down to z. Throws NumericalError if roots cannot be separated along the way.
std::complex<double> solve_G(const AlgebraicCurve& curve, std::complex<double> z);

/// -Im G(x + i eps) / pi. With `richardson`, combines eps and eps / 2 to cancel the O(eps) term.
double stieltjes_density(const AlgebraicCurve& curve, double x, double eps, bool richardson = false);

struct CurveMoments {
    MomentSequence moments;
    double radius = 0.0;
    int points = 0;
};

/// m_l = (1 / 2 pi i) oint z^l G(z) dz on a circle enclosing the support, by the
/// trapezoid rule. The radius grows by 1.5 until two radii agree
/// to 1e-9 up to the rounding floor of the circle sum.
CurveMoments curve_moments_detail(const AlgebraicCurve& curve, int L);
MomentSequence curve_moments(const AlgebraicCurve& curve, int L);

}  // namespace dpplab
