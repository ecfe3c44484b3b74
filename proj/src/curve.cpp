#include "dpplab/curve.hpp"

#include "dpplab/error.hpp"
#include "dpplab/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dpplab {

using cplx = std::complex<double>;

BivariatePolynomial::BivariatePolynomial(Eigen::MatrixXd coeffs) : c_(std::move(coeffs)) {
    require(c_.rows() >= 1 && c_.cols() >= 1, "BivariatePolynomial: empty coefficient matrix");
}

BivariatePolynomial BivariatePolynomial::constant(double c) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = c;
    return BivariatePolynomial(m);
}

BivariatePolynomial BivariatePolynomial::z() {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 1);
    m(1, 0) = 1.0;
    return BivariatePolynomial(m);
}

BivariatePolynomial BivariatePolynomial::w() {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(1, 2);
    m(0, 1) = 1.0;
    return BivariatePolynomial(m);
}

std::vector<cplx> BivariatePolynomial::in_w(cplx z) const {
    std::vector<cplx> out(c_.cols());
    for (Eigen::Index j = 0; j < c_.cols(); ++j) {
        cplx acc = 0.0;
        for (Eigen::Index i = c_.rows() - 1; i >= 0; --i) acc = acc * z + c_(i, j);
        out[j] = acc;
    }
    return out;
}

cplx BivariatePolynomial::operator()(cplx z, cplx w) const {
    const std::vector<cplx> c = in_w(z);
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
    return acc;
}

cplx BivariatePolynomial::dz(cplx z, cplx w) const {
    cplx acc = 0.0, wp = 1.0;
    for (Eigen::Index j = 0; j < c_.cols(); ++j, wp *= w) {
        cplx col = 0.0;
        for (Eigen::Index i = c_.rows() - 1; i >= 1; --i) col = col * z + static_cast<double>(i) * c_(i, j);
        acc += col * wp;
    }
    return acc;
}

cplx BivariatePolynomial::dw(cplx z, cplx w) const {
    const std::vector<cplx> c = in_w(z);
    cplx acc = 0.0;
    for (std::size_t j = c.size() - 1; j >= 1; --j) acc = acc * w + static_cast<double>(j) * c[j];
    return acc;
}

BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(std::max(a.c_.rows(), b.c_.rows()), std::max(a.c_.cols(), b.c_.cols()));
    m.topLeftCorner(a.c_.rows(), a.c_.cols()) += a.c_;
    m.topLeftCorner(b.c_.rows(), b.c_.cols()) += b.c_;
    return BivariatePolynomial(m);
}

BivariatePolynomial operator*(double s, const BivariatePolynomial& a) { return BivariatePolynomial(s * a.c_); }

BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) { return a + (-1.0) * b; }

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.c_.rows() + b.c_.rows() - 1, a.c_.cols() + b.c_.cols() - 1);
    for (Eigen::Index i = 0; i < a.c_.rows(); ++i)
        for (Eigen::Index j = 0; j < a.c_.cols(); ++j) {
            if (a.c_(i, j) == 0.0) continue;
            m.block(i, j, b.c_.rows(), b.c_.cols()) += a.c_(i, j) * b.c_;
        }
    return BivariatePolynomial(m);
}

namespace {

void check_weights(std::span<const double> q, std::span<const double> a) {
    require(!q.empty() && q.size() == a.size(), "curve: q and a must be nonempty and of equal length");
    double total = 0.0;
    for (double x : q) {
        require(x > 0.0, "curve: weights must be > 0");
        total += x;
    }
    require(std::abs(total - 1.0) <= 1e-12, "curve: weights must sum to 1");
}

// w prod_j f_j - sum_i q_i prod_{j != i} f_j, or with the i-th factor repeated.
BivariatePolynomial assemble(std::span<const double> q, const std::vector<BivariatePolynomial>& factors,
                             IndexReading reading) {
    const std::size_t r = factors.size();
    BivariatePolynomial all = BivariatePolynomial::constant(1.0);
    for (const auto& f : factors) all = all * f;
    BivariatePolynomial out = BivariatePolynomial::w() * all;
    for (std::size_t i = 0; i < r; ++i) {
        BivariatePolynomial term = BivariatePolynomial::constant(q[i]);
        for (std::size_t j = 0; j < r; ++j)
            if (j != i) term = term * (reading == IndexReading::JIndexed ? factors[j] : factors[i]);
        out = out - term;
    }
    return out;
}

}  // namespace

AlgebraicCurve curve_hermite(std::span<const double> q, std::span<const double> a, IndexReading reading) {
    check_weights(q, a);
    std::vector<BivariatePolynomial> factors;
    double amax = 0.0;
    for (double x : a) {
        factors.push_back(BivariatePolynomial::z() - BivariatePolynomial::w() - BivariatePolynomial::constant(x));
        amax = std::max(amax, std::abs(x));
    }
    AlgebraicCurve curve;
    curve.poly = assemble(q, factors, reading);
    curve.support_radius = 2.0 + amax;
    return curve;
}

AlgebraicCurve curve_laguerre(std::span<const double> q, std::span<const double> a, double alpha,
                              IndexReading reading) {
    check_weights(q, a);
    require(alpha >= 0.0, "curve_laguerre: alpha must be >= 0");
    const BivariatePolynomial inner = BivariatePolynomial::constant(1.0 - alpha) +
                                      alpha * (BivariatePolynomial::z() * BivariatePolynomial::w());
    std::vector<BivariatePolynomial> factors;
    double inv_max = 0.0;
    for (double x : a) {
        require(x > 0.0, "curve_laguerre: a_j must be > 0");
        factors.push_back(BivariatePolynomial::z() - (1.0 / x) * inner);
        inv_max = std::max(inv_max, 1.0 / x);
    }
    AlgebraicCurve curve;
    curve.poly = assemble(q, factors, reading);
    curve.support_radius = (1.0 + std::sqrt(alpha)) * (1.0 + std::sqrt(alpha)) * inv_max;
    if (alpha == 0.0) {
        for (std::size_t i = 0; i < a.size(); ++i) curve.atoms.push_back({1.0 / a[i], q[i]});
    } else if (alpha > 1.0) {
        curve.atoms.push_back({0.0, 1.0 - 1.0 / alpha});
    }
    return curve;
}

std::vector<cplx> polynomial_roots(std::span<const cplx> c) {
    double scale = 0.0;
    for (const cplx& x : c) scale = std::max(scale, std::abs(x));
    require(scale > 0.0, "polynomial_roots: zero polynomial");
    std::size_t deg = c.size() - 1;
    while (deg > 0 && std::abs(c[deg]) <= 1e-14 * scale) --deg;
    if (deg == 0) return {};
    std::vector<cplx> roots;
    if (deg == 1) {
        roots.push_back(-c[0] / c[1]);
    } else {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
        for (std::size_t i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (std::size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        if (es.info() != Eigen::Success) throw NumericalError("polynomial_roots: eigenvalue iteration failed");
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
    }
    for (cplx& x : roots) {
        for (int it = 0; it < 2; ++it) {
            cplx p = 0.0, dp = 0.0;
            for (std::size_t k = deg + 1; k-- > 0;) {
                dp = dp * x + p;
                p = p * x + c[k];
            }
            if (dp == 0.0) break;
            const cplx step = p / dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            if (std::abs(step) > 1e-6 * (1.0 + std::abs(x))) break;  // polish only
            x -= step;
        }
    }
    return roots;
}

namespace {

struct Nearest {
    cplx root;
    double d1;
    double d2;
};

Nearest nearest_root(const AlgebraicCurve& curve, cplx z, cplx target) {
    const std::vector<cplx> c = curve.poly.in_w(z);
    const std::vector<cplx> roots = polynomial_roots(c);
    if (roots.empty()) throw NumericalError("solve_G: no roots in w at z = " + std::to_string(z.real()) + "+" +
                                            std::to_string(z.imag()) + "i");
    Nearest best{roots[0], std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (const cplx& x : roots) {
        const double d = std::abs(x - target);
        if (d < best.d1) {
            best.d2 = best.d1;
            best.d1 = d;
            best.root = x;
        } else if (d < best.d2) {
            best.d2 = d;
        }
    }
    return best;
}

constexpr double kSeparation = 0.25;

// Continues the root w at za along the segment to zb.
cplx continue_root(const AlgebraicCurve& curve, cplx za, cplx wa, cplx zb) {
    double t = 0.0, h = 1.0;
    cplx z = za, w = wa;
    while (t < 1.0) {
        const double step = std::min(h, 1.0 - t);
        const cplx z1 = za + (zb - za) * (t + step);
        cplx predicted = w;
        const cplx pw = curve.poly.dw(z, w);
        if (std::abs(pw) > 0.0) {
            const cplx slope = -curve.poly.dz(z, w) / pw;
            if (std::isfinite(slope.real()) && std::isfinite(slope.imag())) predicted = w + slope * (z1 - z);
        }
        const Nearest n = nearest_root(curve, z1, predicted);
        if (n.d1 < kSeparation * n.d2 && n.d1 < 0.5 * std::abs(predicted - w) + 1e-3 * (1.0 + std::abs(w))) {
            z = z1;
            w = n.root;
            t += step;
            h = std::min(1.0, 2.0 * step);
        } else {
            h = step / 2.0;
            if (h < 1e-12)
                throw NumericalError("solve_G: branches cannot be separated near z = " + std::to_string(z1.real()) +
                                     "+" + std::to_string(z1.imag()) + "i (discriminant vanishes on the path)");
        }
    }
    return w;
}

}  // namespace

std::complex<double> solve_G(const AlgebraicCurve& curve, std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InvalidArgument("solve_G: z must be finite");
    if (z.imag() == 0.0 && std::abs(z) <= curve.support_radius)
        throw InvalidArgument("solve_G: z is real and inside the support bound");
    const double H = std::max(1e3, 100.0 * (curve.support_radius + std::abs(z)));
    const double sign = z.imag() >= 0.0 ? 1.0 : -1.0;
    const cplx z0(z.real(), sign * H);
    const Nearest start = nearest_root(curve, z0, 1.0 / z0);
    if (!(start.d1 < kSeparation * start.d2))
        throw NumericalError("solve_G: physical branch is not isolated at the starting point");
    // Descend in geometric steps so that the step size tracks the distance to the real axis.
    cplx za = z0, w = start.root;
    for (double y = H / 2.0; y > std::abs(z.imag()); y /= 2.0) {
        const cplx zb(z.real(), sign * y);
        w = continue_root(curve, za, w, zb);
        za = zb;
    }
    return continue_root(curve, za, w, z);
}

double stieltjes_density(const AlgebraicCurve& curve, double x, double eps, bool richardson) {
    require(eps > 0.0, "stieltjes_density: eps must be > 0");
    const double d1 = -solve_G(curve, cplx(x, eps)).imag() / std::numbers::pi;
    if (!richardson) return d1;
    const double d2 = -solve_G(curve, cplx(x, eps / 2.0)).imag() / std::numbers::pi;
    return 2.0 * d2 - d1;
}

namespace {

std::vector<double> circle_moments(const AlgebraicCurve& curve, int L, double rho, int M) {
    std::vector<std::vector<double>> terms(L + 1, std::vector<double>(M));
    const double theta0 = std::numbers::pi / 2.0;
    cplx zprev = std::polar(rho, theta0);
    cplx w = solve_G(curve, zprev);
    for (int j = 0; j < M; ++j) {
        const cplx zj = std::polar(rho, theta0 + 2.0 * std::numbers::pi * j / M);
        if (j > 0) w = continue_root(curve, zprev, w, zj);
        zprev = zj;
        cplx zp = zj * w;
        for (int l = 0; l <= L; ++l) {
            terms[l][j] = zp.real();
            zp *= zj;
        }
    }
    // Closing the loop must return to the starting branch.
    const cplx back = continue_root(curve, zprev, w, std::polar(rho, theta0));
    const cplx first = solve_G(curve, std::polar(rho, theta0));
    if (std::abs(back - first) > 1e-8 * (1.0 + std::abs(first)))
        throw NumericalError("curve_moments: continuation around the circle changed branch");
    std::vector<double> m(L + 1);
    for (int l = 0; l <= L; ++l) m[l] = pairwise_sum(terms[l]) / M;
    return m;
}

int points_for(double support, double rho) {
    const double ratio = std::max(support / rho, 1e-3);
    int M = 128;
    while (M < 8192 && std::pow(ratio, M) > 1e-17) M *= 2;
    return M;
}

}  // namespace

CurveMoments curve_moments_detail(const AlgebraicCurve& curve, int L) {
    require(L >= 0, "curve_moments: L must be >= 0");
    constexpr double kGrowth = 1.5;
    double rho = 1.25 * curve.support_radius + 0.5;
    int M = points_for(curve.support_radius, rho);
    std::vector<double> inner = circle_moments(curve, L, rho, M);
    for (int attempt = 0; attempt <= 4; ++attempt) {
        const double rho2 = kGrowth * rho;
        const int M2 = points_for(curve.support_radius, rho2);
        const std::vector<double> outer = circle_moments(curve, L, rho2, M2);
        // Summing z^(l+1) G(z) on the circle cancels terms of size rho^l, which sets a rounding floor.
        bool agree = true;
        for (int l = 0; l <= L; ++l) {
            const double floor = 1e3 * std::numeric_limits<double>::epsilon() * std::pow(rho2, l);
            if (std::abs(inner[l] - outer[l]) > 1e-9 * std::max(1.0, std::abs(outer[l])) + floor) agree = false;
        }
        if (agree) {
            if (std::abs(inner[0] - 1.0) > 1e-8)
                throw NumericalError("curve_moments: total mass " + std::to_string(inner[0]) + " differs from 1");
            inner[0] = 1.0;
            return {MomentSequence(std::move(inner)), rho, M};
        }
        rho = rho2;
        M = M2;
        inner = outer;
    }
    throw NumericalError("curve_moments: contour radii do not agree after 4 enlargements");
}

MomentSequence curve_moments(const AlgebraicCurve& curve, int L) { return curve_moments_detail(curve, L).moments; }

}  // namespace dpplab
