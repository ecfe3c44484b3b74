#include "dpplab/bandop.hpp"
#include "dpplab/error.hpp"
#include "dpplab/mop.hpp"

#include <doctest.h>

#include <cmath>

using namespace dpplab;

namespace {

RecurrenceScheme gue() { return classical_scheme({ClassicalKind::Gue}); }

}  // namespace

TEST_SUITE("bandop") {
    TEST_CASE("build_truncation examples") {
        const BandedOperator op = build_truncation(gue(), 3, 2);
        CHECK(op.matrix().size() == 5);
        const double expected[] = {std::sqrt(1.0 / 3), std::sqrt(2.0 / 3), 1.0, std::sqrt(4.0 / 3)};
        for (int k = 0; k < 4; ++k) {
            CHECK(op.matrix()(k + 1, k) == doctest::Approx(expected[k]));
            CHECK(op.matrix()(k, k + 1) == doctest::Approx(expected[k]));
            CHECK(op.matrix()(k, k) == 0);
        }
        const BandedOperator one = build_truncation(classical_scheme({ClassicalKind::Charlier, 1.0}), 1, 0);
        CHECK(one.matrix().size() == 1);
        CHECK(one.matrix()(0, 0) == doctest::Approx(1.0));
        const BandedOperator ch = build_truncation(classical_scheme({ClassicalKind::Charlier, 1.0}), 2, 1);
        CHECK(ch.matrix()(0, 0) == doctest::Approx(1.0));
        CHECK(ch.matrix()(1, 1) == doctest::Approx(1.5));
        CHECK(ch.matrix()(1, 0) == doctest::Approx(std::sqrt(0.5)));
    }

    TEST_CASE("trace examples") {
        CHECK(mean_moment(gue(), 5, 2) == doctest::Approx(1));
        CHECK(zero_moment_trace(gue(), 5, 2) == doctest::Approx(0.8));
        CHECK(zero_moment_trace(gue(), 5, 1) == 0);
        CHECK(variance_moment(gue(), 5, 0) == 0);
        const RecurrenceScheme w0 = classical_scheme({ClassicalKind::Wishart, 0.0});
        CHECK(mean_moment(w0, 4, 1) == doctest::Approx(1));
        CHECK(variance_moment(w0, 3, 1) ==
              doctest::Approx(lattice_sum(w0, {3, 1, PathConstraint::MidpointAtOrAbove})).epsilon(1e-12));
        for (long N : {1L, 4L, 9L}) {
            CHECK(mean_moment(w0, N, 0) == 1);
            CHECK(zero_moment_trace(w0, N, 0) == 1);
        }
    }

    TEST_CASE("lattice examples") {
        CHECK(lattice_sum(gue(), {5, 2, PathConstraint::None}) == doctest::Approx(1));
        CHECK(lattice_sum(gue(), {5, 2, PathConstraint::AvoidDN}) == doctest::Approx(0.8));
        CHECK(lattice_sum(gue(), {5, 1, PathConstraint::MidpointAtOrAbove}) == doctest::Approx(1.0 / 25));
        CHECK(lattice_sum(gue(), {5, 0, PathConstraint::MidpointAtOrAbove}) == 0);
        CHECK_THROWS_AS(lattice_sum(gue(), {5, 9, PathConstraint::None}), InvalidArgument);
    }

    TEST_CASE("GUE variance decays exactly as 1/N^2") {
        for (long N = 1; N <= 60; ++N) CHECK(variance_moment(gue(), N, 1) * N * N == doctest::Approx(1).epsilon(1e-12));
    }

    TEST_CASE("escaping paths start within q * ell of N") {
        const RecurrenceScheme ch = classical_scheme({ClassicalKind::Charlier, 1.0});
        const long N = 10;
        for (int l = 1; l <= 5; ++l) {
            const auto all = lattice_sums_per_start(ch, {N, l, PathConstraint::None});
            const auto kept = lattice_sums_per_start(ch, {N, l, PathConstraint::AvoidDN});
            for (long k = 0; k < N - l; ++k) CHECK(all[k] == kept[k]);
        }
    }

    TEST_CASE("variance is nonnegative and bounds hold") {
        const RecurrenceScheme meixner = classical_scheme({ClassicalKind::Meixner, 0.5, 1.0});
        for (long N : {5L, 20L, 80L})
            for (int l = 0; l <= 4; ++l) {
                const double gap = std::abs(mean_moment(meixner, N, l) - zero_moment_trace(meixner, N, l));
                CHECK(gap <= gap_bound(meixner, N, l));
                const double v = variance_moment(meixner, N, l);
                CHECK(v >= 0);
                CHECK(v <= variance_bound(meixner, N, l));
            }
        const RecurrenceScheme w1 = classical_scheme({ClassicalKind::Wishart, 1.0});
        CHECK(variance_bound(w1, 50, 2) >= variance_moment(w1, 50, 2));
        for (long N : {3L, 10L, 40L}) CHECK(variance_bound(gue(), N, 1) >= 1.0 / (N * N));
    }

    TEST_CASE("bound evaluators") {
        CHECK(window_max(gue(), 100, 0.1) == doctest::Approx(std::sqrt(1.1)));
        CHECK(window_max(classical_scheme({ClassicalKind::Charlier, 1.0}), 100, 0.1) == doctest::Approx(2.1));
        const RecurrenceScheme zero("zero", {}, 1, 1, [](long, long, long) { return 0.0; });
        CHECK(window_max(zero, 50, 0.1) == 0);
        CHECK(variance_bound(zero, 50, 2) == 0);
        CHECK(gap_bound(gue(), 100, 2) == doctest::Approx(0.16 * 1.02).epsilon(1e-12));
        for (long N : {4L, 10L, 30L}) CHECK(gap_bound(gue(), N, 1) >= 1.0 / N);
    }

    TEST_CASE("non-finite entries are reported") {
        const RecurrenceScheme bad("bad", {}, 1, 1, [](long m, long k, long) { return m == k && k == 2 ? NAN : 1.0; });
        CHECK_THROWS_AS(build_truncation(bad, 4, 1), NumericalError);
    }

    TEST_CASE("MOP window stays bounded in N") {
        const MopParams params{{1.0, -1.0}};
        double previous = 0;
        for (long N : {50L, 100L, 200L, 400L}) {
            const RecurrenceScheme s = mop_scheme(MopKind::Hermite, params, path_from_ratios({0.5, 0.5}, 2 * N));
            const double w = window_max(s, N, 0.1);
            CHECK(w < 3.0);
            if (previous > 0) CHECK(w <= previous * 1.05);
            previous = w;
        }
    }
}
