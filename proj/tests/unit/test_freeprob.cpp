#include "dpplab/error.hpp"
#include "dpplab/freeprob.hpp"
#include "dpplab/series.hpp"

#include <doctest.h>

#include <cmath>

using namespace dpplab;

namespace {

void check_equal(const MomentSequence& x, const MomentSequence& y, double tol) {
    REQUIRE(x.size() == y.size());
    for (std::size_t l = 0; l < x.size(); ++l) CHECK(std::abs(x[l] - y[l]) <= tol * std::max(1.0, std::abs(y[l])));
}

MomentSequence atoms(std::vector<double> loc, std::vector<double> w, int L) { return AtomicMeasure(loc, w).moments(L); }

}  // namespace

TEST_SUITE("freeprob") {
    TEST_CASE("series arithmetic") {
        const FormalSeries f{{1, 2, 3}, 0};
        const FormalSeries g = reciprocal(f) * f;
        CHECK(g.coeffs[0] == 1);
        CHECK(g.coeffs[1] == doctest::Approx(0).epsilon(1e-15));
        CHECK(g.coeffs[2] == doctest::Approx(0).epsilon(1e-15));
        const FormalSeries id{{1, 0, 0, 0}, 1};
        const FormalSeries inv = series_compose_inverse(id);
        CHECK(inv.coeffs == std::vector<double>{1, 0, 0, 0});
        // f(z) = z + z^2 inverts to the Catalan generating function with alternating signs.
        const FormalSeries h = series_compose_inverse(FormalSeries{{1, 1, 0, 0, 0, 0}, 1});
        const double cat[] = {1, -1, 2, -5, 14, -42};
        for (int k = 0; k < 6; ++k) CHECK(h.coeffs[k] == doctest::Approx(cat[k]));
        const FormalSeries back = compose(FormalSeries{{0, 1, 1, 0, 0, 0, 0}, 0}, h);
        CHECK(back.coeffs[1] == doctest::Approx(1));
        for (int k = 2; k < 7; ++k) CHECK(back.coeffs[k] == doctest::Approx(0).epsilon(1e-12));
        CHECK_THROWS_AS(series_compose_inverse(FormalSeries{{0, 1}, 1}), InvalidArgument);
        CHECK_THROWS_AS(FormalSeries({1, 2}, 0).at(2), InvalidArgument);
    }

    TEST_CASE("R-transform of the semicircle is w") {
        const FormalSeries r = r_transform(semicircle_moments(8));
        CHECK(r.coeffs.size() == 8);
        for (std::size_t k = 0; k < r.coeffs.size(); ++k)
            CHECK(r.coeffs[k] == doctest::Approx(k == 1 ? 1.0 : 0.0).epsilon(1e-12));
        // Free cumulants of free Poisson with rate alpha are all alpha.
        const FormalSeries rp = r_transform(mp_moments(1.7, 6));
        for (double c : rp.coeffs) CHECK(c == doctest::Approx(1.7));
        check_equal(moments_from_r(r, 8), semicircle_moments(8), 1e-12);
    }

    TEST_CASE("free additive convolution") {
        const MomentSequence m = free_add(semicircle_moments(6), atoms({-1, 1}, {0.5, 0.5}, 6));
        CHECK(m[2] == doctest::Approx(2));
        CHECK(m[4] == doctest::Approx(7));
        CHECK(m[6] == doctest::Approx(30));
        // Translation by a point mass.
        const double a = 0.7;
        const MomentSequence shifted = free_add(semicircle_moments(8), atoms({a}, {1}, 8));
        for (int l = 0; l <= 8; ++l) {
            double expect = 0, binom = 1;
            for (int i = 0; i <= l; ++i) {
                if (i > 0) binom = binom * (l - i + 1) / i;
                expect += binom * semicircle_moment(i) * std::pow(a, l - i);
            }
            CHECK(shifted[l] == doctest::Approx(expect));
        }
        check_equal(free_add(mp_moments(2.0, 8), atoms({0}, {1}, 8)), mp_moments(2.0, 8), 1e-12);
        // Semicircle plus semicircle is a semicircle of variance 2.
        const MomentSequence two = free_add(semicircle_moments(8), semicircle_moments(8));
        for (int l = 0; l <= 8; ++l) CHECK(two[l] == doctest::Approx(semicircle_moment(l) * std::pow(2.0, l / 2.0)));
    }

    TEST_CASE("free multiplicative convolution") {
        check_equal(free_mul(mp_moments(1, 3), atoms({1}, {1}, 3)), MomentSequence({1, 1, 2, 5}), 1e-12);
        check_equal(free_mul(mp_moments(0.6, 8), atoms({1}, {1}, 8)), mp_moments(0.6, 8), 1e-12);
        // Free Poisson laws multiply like S-transforms 1/(z + lambda).
        const MomentSequence nu = atoms({1, 0.5}, {0.5, 0.5}, 6);
        for (double alpha : {0.5, 1.0, 2.0}) {
            const MomentSequence m = free_mul(mp_moments(alpha, 6), nu);
            CHECK(m[1] == doctest::Approx(alpha * 0.75));
            // phi(abab) = phi(a^2) phi(b)^2 + phi(a)^2 phi(b^2) - phi(a)^2 phi(b)^2 for free a, b.
            CHECK(m[2] == doctest::Approx(alpha * nu[1] * nu[1] + alpha * alpha * nu[2]));
        }
        const MomentSequence fp2 = free_mul(mp_moments(2.0, 6), nu);
        CHECK(fp2[1] == doctest::Approx((1 + 1.0) * 0.75));
        CHECK_THROWS_AS(free_mul(semicircle_moments(4), nu), InvalidArgument);
        CHECK_THROWS_AS(free_add(MomentSequence({1}), nu), InvalidArgument);
    }

    TEST_CASE("S-transform round trip") {
        const MomentSequence mu = atoms({1, 3}, {0.25, 0.75}, 6);
        const FormalSeries s = s_transform(mu);
        const MomentSequence back = moments_from_s(s, 6);
        check_equal(back, mu, 1e-10);
    }
}
