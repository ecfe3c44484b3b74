#include "dpplab/zeros.hpp"

#include "dpplab/error.hpp"
#include "dpplab/summation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dpplab {

namespace {

void sort_points(std::vector<std::complex<double>>& pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
}

bool symmetric_tridiagonal(const BandMatrix& block) {
    const int n = block.size();
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - block.sub()); j <= std::min(n - 1, i + block.super()); ++j) {
            const double v = block(i, j);
            if (std::abs(i - j) > 1 && v != 0.0) return false;
            if (i - j == 1) {
                const double w = block(j, i);
                if (std::abs(v - w) > 1e-14 * std::max({1.0, std::abs(v), std::abs(w)})) return false;
            }
        }
    return true;
}

std::string describe(const Eigen::MatrixXd& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols() << " block";
    if (m.rows() <= 8) os << ":\n" << m;
    return os.str();
}


// Sign of P_n(x) = det(x I - B) / prod B(k+1, k) for an upper Hessenberg band
// block, by the forward recurrence. Values are rescaled by powers of two, so
// only the sign is kept.
int hessenberg_charpoly_sign(const BandMatrix& b, double x) {
    const int n = b.size();
    const int R = b.super();
    std::vector<double> p(n + 1, 0.0);
    p[0] = 1.0;
    for (int k = 0; k < n; ++k) {
        double v = (x - b(k, k)) * p[k];
        for (int m = std::max(0, k - R); m < k; ++m) v -= b(m, k) * p[m];
        if (k + 1 < n) v /= b(k + 1, k);
        p[k + 1] = v;
        const double mag = std::abs(v);
        if (mag > 0x1.0p500 || (mag > 0.0 && mag < 0x1.0p-500)) {
            const int e = std::ilogb(mag);
            for (int m = std::max(0, k + 1 - R); m <= k + 1; ++m) p[m] = std::ldexp(p[m], -e);
        }
    }
    return (p[n] > 0.0) - (p[n] < 0.0);
}

// Brackets every zero of det(x I - B) by sign changes, seeded with approximate
// eigenvalues. Succeeds only if n sign changes are found, which proves that
// all zeros are real and simple; the zeros are then bisected to full precision.
bool certified_real_zeros(const BandMatrix& b, const std::vector<std::complex<double>>& approx,
                          std::vector<double>& roots) {
    const int n = b.size();
    if (b.sub() != 1 || n < 1) return false;
    for (int k = 0; k + 1 < n; ++k)
        if (b(k + 1, k) == 0.0) return false;
    double bound = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = std::max(0, i - b.sub()); j <= std::min(n - 1, i + b.super()); ++j) row += std::abs(b(i, j));
        bound = std::max(bound, row);
    }
    bound = bound * (1.0 + 1e-12) + 1e-300;

    // One interval per seed, split at midpoints of consecutive real parts. An
    // interval is suspect when its seed is off the real axis or no sign change
    // is seen in it; suspect intervals are subdivided until n changes appear.
    std::vector<std::complex<double>> seeds(approx);
    std::sort(seeds.begin(), seeds.end(), [](const auto& x, const auto& y) { return x.real() < y.real(); });
    double scale = 1.0;
    for (const auto& z : seeds) scale = std::max(scale, std::abs(z));
    std::vector<double> xs{-bound};
    std::vector<bool> suspect;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const double right =
            i + 1 < seeds.size() ? std::clamp(0.5 * (seeds[i].real() + seeds[i + 1].real()), -bound, bound) : bound;
        if (right <= xs.back()) {
            if (!suspect.empty()) suspect.back() = true;
            continue;
        }
        xs.push_back(right);
        suspect.push_back(std::abs(seeds[i].imag()) > 1e-10 * scale);
    }
    if (suspect.empty()) return false;

    auto sign_at = [&](double& x) {
        int s = hessenberg_charpoly_sign(b, x);
        for (int tries = 0; s == 0 && tries < 8; ++tries) {
            x = std::nextafter(x, bound);
            s = hessenberg_charpoly_sign(b, x);
        }
        return s;
    };
    std::vector<int> signs;
    for (double& x : xs) signs.push_back(sign_at(x));

    const std::size_t budget = 400 * static_cast<std::size_t>(n) + 1000;
    int previous = -1;
    for (int round = 0; round < 10; ++round) {
        int changes = 0;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) changes += signs[i] != signs[i + 1];
        if (changes >= n || xs.size() > budget) break;
        // An interval from a real seed can still hide an extra pair of zeros,
        // so everything is split on the first round and whenever progress stalls.
        const bool split_all = round == 0 || changes == previous;
        previous = changes;
        std::vector<double> nx{xs[0]};
        std::vector<int> ns{signs[0]};
        std::vector<bool> nsus;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const bool split = split_all || suspect[i] || signs[i] == signs[i + 1];
            if (split) {
                for (int j = 1; j < 8; ++j) {
                    double x = xs[i] + (xs[i + 1] - xs[i]) * j / 8.0;
                    if (x <= nx.back()) continue;
                    const int sx = sign_at(x);
                    nx.push_back(x);
                    ns.push_back(sx);
                    nsus.push_back(true);
                }
            }
            nx.push_back(xs[i + 1]);
            ns.push_back(signs[i + 1]);
            nsus.push_back(split);
        }
        // Subintervals that already show a change and came from a real seed stop being suspect.
        for (std::size_t i = 0; i < nsus.size(); ++i)
            if (nsus[i] && ns[i] != ns[i + 1] && round > 0) nsus[i] = false;
        xs.swap(nx);
        signs.swap(ns);
        suspect.swap(nsus);
    }

    roots.clear();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (signs[i] == signs[i + 1] || signs[i] == 0 || signs[i + 1] == 0) continue;
        double lo = xs[i], hi = xs[i + 1];
        const int slo = signs[i];
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const int s = hessenberg_charpoly_sign(b, mid);
            if (s == 0) {
                lo = hi = mid;
                break;
            }
            (s == slo ? lo : hi) = mid;
        }
        roots.push_back(0.5 * (lo + hi));
    }
    return static_cast<int>(roots.size()) == n;
}

}  // namespace

Eigen::MatrixXd balance(Eigen::MatrixXd a) {
    const Eigen::Index n = a.rows();
    constexpr double radix = 2.0;
    bool done = false;
    int sweeps = 0;
    while (!done && sweeps++ < 100) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
    return a;
}

SpectralMeasure spectrum_dense(const Eigen::MatrixXd& block) {
    const Eigen::Index n = block.rows();
    require(n >= 1 && block.cols() == n, "spectrum: block must be square and nonempty");
    Eigen::EigenSolver<Eigen::MatrixXd> solver;
    solver.setMaxIterations(static_cast<Eigen::Index>(100) * n);
    solver.compute(balance(block), false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("spectrum: eigensolver did not converge on " + describe(block));
    SpectralMeasure sm;
    sm.points.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
    sort_points(sm.points);
    return sm;
}

SpectralMeasure spectrum(const BandedOperator& op) {
    const BandMatrix block = op.principal_block();
    const int n = block.size();
    if (symmetric_tridiagonal(block)) {
        Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
        for (int i = 0; i < n; ++i) diag[i] = block(i, i);
        for (int i = 0; i + 1 < n; ++i) off[i] = block(i + 1, i);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw NumericalError("spectrum: tridiagonal solver did not converge on " + describe(block.dense()));
        SpectralMeasure sm;
        for (Eigen::Index i = 0; i < n; ++i) sm.points.emplace_back(solver.eigenvalues()[i], 0.0);
        sort_points(sm.points);
        return sm;
    }
    SpectralMeasure sm = spectrum_dense(block.dense());
    std::vector<double> roots;
    if (certified_real_zeros(block, sm.points, roots)) {
        sm.points.clear();
        for (double x : roots) sm.points.emplace_back(x, 0.0);
        sort_points(sm.points);
    }
    return sm;
}

ZeroMoments zero_moments(const SpectralMeasure& sm, int L) {
    require(L >= 0, "zero_moments: L must be >= 0");
    require(!sm.points.empty(), "zero_moments: empty spectral measure");
    const double n = static_cast<double>(sm.points.size());
    std::vector<double> re(L + 1), im(L + 1, 0.0);
    re[0] = 1.0;
    for (int ell = 1; ell <= L; ++ell) {
        CompensatedSum sr, si;
        for (const auto& z : sm.points) {
            const std::complex<double> p = std::pow(z, ell);
            sr.add(p.real());
            si.add(p.imag());
        }
        re[ell] = sr.value() / n;
        im[ell] = si.value() / n;
    }
    return {MomentSequence(std::move(re)), std::move(im)};
}

RealityReport reality_check(const SpectralMeasure& sm, double tol) {
    double worst = 0.0;
    for (const auto& z : sm.points) worst = std::max(worst, std::abs(z.imag()));
    return {worst <= tol, worst};
}

namespace {

// Complex number carried as mantissa * 2^exponent so long products do not overflow.
struct Scaled {
    std::complex<double> mant{1.0, 0.0};
    long exp = 0;

    static Scaled normalize(std::complex<double> v, long e) {
        const double mag = std::max(std::abs(v.real()), std::abs(v.imag()));
        if (mag == 0.0 || !std::isfinite(mag)) return {v, mag == 0.0 ? 0 : e};
        int shift = 0;
        std::frexp(mag, &shift);
        return {std::ldexp(v.real(), -shift) + std::complex<double>(0.0, std::ldexp(v.imag(), -shift)), e + shift};
    }
};

CharpolyValue finish(const Scaled& d) {
    CharpolyValue out{};
    const double mag = std::abs(d.mant);
    if (mag == 0.0) {
        out.value = 0.0;
        out.log_abs = -std::numeric_limits<double>::infinity();
        out.phase = 0.0;
        out.overflow = false;
        return out;
    }
    out.log_abs = std::log(mag) + static_cast<double>(d.exp) * std::log(2.0);
    out.phase = std::arg(d.mant);
    out.overflow = d.exp > 1000;
    out.value = out.overflow ? std::complex<double>(std::numeric_limits<double>::infinity(), 0.0)
                             : std::complex<double>(std::ldexp(d.mant.real(), static_cast<int>(d.exp)),
                                                    std::ldexp(d.mant.imag(), static_cast<int>(d.exp)));
    return out;
}

}  // namespace

CharpolyValue charpoly_eval(const BandedOperator& op, std::complex<double> z) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), "charpoly_eval: z must be finite");
    const BandMatrix a = op.principal_block();
    const int n = a.size();
    if (op.upper_band() != 1) {
        // Not Hessenberg: dense LU, accumulating the log-determinant.
        Eigen::MatrixXcd h = -a.dense().cast<std::complex<double>>();
        h.diagonal().array() += z;
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(h);
        const Eigen::MatrixXcd& u = lu.matrixLU();
        Scaled d;
        d.mant = lu.permutationP().determinant();
        for (int i = 0; i < n; ++i) {
            d = Scaled::normalize(d.mant * u(i, i), d.exp);
        }
        return finish(d);
    }
    // H = zI - A is upper Hessenberg with upper bandwidth R. Leading minors:
    // D_j = H_jj D_{j-1} + sum_{i<j} (-1)^{j-i} H_ij (prod_{l=i}^{j-1} H_{l+1,l}) D_{i-1}.
    auto H = [&](int i, int j) { return (i == j ? z : 0.0) - a(i, j); };
    const int R = a.super();
    std::vector<Scaled> D(n + 1);
    D[0] = {1.0, 0};
    for (int j = 1; j <= n; ++j) {
        const int jj = j - 1;  // zero-based column
        long emax = D[j - 1].exp;
        const int ilo = std::max(1, j - R);
        for (int i = ilo; i < j; ++i) emax = std::max(emax, D[i - 1].exp);
        std::complex<double> acc = H(jj, jj) * std::ldexp(1.0, static_cast<int>(D[j - 1].exp - emax)) * D[j - 1].mant;
        for (int i = ilo; i < j; ++i) {
            std::complex<double> prod = H(i - 1, jj);
            for (int l = i; l < j; ++l) prod *= H(l, l - 1);
            if ((j - i) % 2) prod = -prod;
            acc += prod * D[i - 1].mant * std::ldexp(1.0, static_cast<int>(D[i - 1].exp - emax));
        }
        D[j] = Scaled::normalize(acc, emax);
    }
    return finish(D[n]);
}

}  // namespace dpplab
