#include "dpplab/error.hpp"
#include "dpplab/recurrence.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dpplab;

namespace {

std::vector<ClassicalEnsembleId> all_classical() {
    return {{ClassicalKind::Gue},
            {ClassicalKind::Wishart, 0.0},
            {ClassicalKind::Wishart, 1.0},
            {ClassicalKind::Jacobi, 1.0, 1.0},
            {ClassicalKind::Charlier, 1.0},
            {ClassicalKind::Meixner, 0.5, 1.0}};
}

// Moments of the negative binomial law P(k) = C(k + b - 1, k) (1 - p)^b p^k by direct summation.
double negbin_moment(double b, double p, int order) {
    double total = 0, term = std::pow(1 - p, b);
    for (int k = 0; k < 4000; ++k) {
        total += term * std::pow(static_cast<double>(k), order);
        term *= (k + b) / (k + 1) * p;
    }
    return total;
}

}  // namespace

TEST_SUITE("recurrence") {
    TEST_CASE("table examples") {
        const ClassicalEnsembleId gue{ClassicalKind::Gue};
        CHECK(classical_a_squared(gue, 4, 4) == 1);
        CHECK(classical_b(gue, 4, 4) == 0);
        const ClassicalEnsembleId w0{ClassicalKind::Wishart, 0.0};
        CHECK(classical_a_squared(w0, 1, 1) == 1);
        CHECK(classical_b(w0, 1, 1) == 3);
        const ClassicalEnsembleId ch{ClassicalKind::Charlier, 2.0};
        CHECK(classical_a_squared(ch, 3, 3) == doctest::Approx(2));
        CHECK(classical_b(ch, 3, 3) == doctest::Approx(3));
        const ClassicalEnsembleId jac{ClassicalKind::Jacobi, 1.0, 1.0};
        CHECK(std::abs(classical_b(jac, 100000, 100000)) < 1e-4);
    }

    TEST_CASE("coeff returns a = 0 at k = 0") {
        const RecurrenceScheme s = classical_scheme({ClassicalKind::Gue});
        const RecurrenceCoefficients c = coeff(s, 0, 10);
        CHECK(c.a == 0);
        CHECK(c.b == 0);
        CHECK(coeff(s, 5, 10).a == doctest::Approx(std::sqrt(0.5)));
    }

    TEST_CASE("Meixner coefficients carry the factor alpha") {
        const ClassicalEnsembleId id{ClassicalKind::Meixner, 0.5, 1.0};
        const long N = 7;
        CHECK(classical_b(id, N, N) == doctest::Approx(4));
        CHECK(classical_a_squared(id, N, N) == doctest::Approx(0.5 / 0.25 * (2 - 1.0 / N)));
        // Orthogonality measure of Meixner(beta N, alpha) on the lattice k / N: its mean and
        // variance are b_0 and a_1^2.
        for (long n : {1L, 3L, 10L}) {
            const double beta = id.beta * n, p = id.alpha;
            const double m1 = negbin_moment(beta, p, 1), m2 = negbin_moment(beta, p, 2);
            const double mean = m1 / n, var = (m2 - m1 * m1) / (double(n) * n);
            CHECK(classical_b(id, 0, n) == doctest::Approx(mean).epsilon(1e-10));
            CHECK(classical_a_squared(id, 1, n) == doctest::Approx(var).epsilon(1e-10));
        }
    }

    TEST_CASE("kva functions are the limits of the coefficients") {
        for (const auto& id : all_classical()) {
            const KVAMixture mix = kva_functions(id);
            const long N = 1000;
            for (double s : {0.25, 0.5, 1.0}) {
                const long k = static_cast<long>(std::floor(s * N));
                CHECK(std::abs(std::sqrt(classical_a_squared(id, k, N)) - mix.a(s)) < 1e-2);
                CHECK(std::abs(classical_b(id, k, N) - mix.b(s)) < 1e-2);
            }
        }
        const KVAMixture w = kva_functions({ClassicalKind::Wishart, 0.5});
        CHECK(w.a(0.3) == doctest::Approx(std::sqrt(0.3 * 0.8)));
        CHECK(w.b(0.3) == doctest::Approx(1.1));
        const KVAMixture c = kva_functions({ClassicalKind::Charlier, 2.0});
        CHECK(c.a(0.5) == doctest::Approx(1.0));
        CHECK(c.b(0.5) == doctest::Approx(2.5));
    }

    TEST_CASE("band is honored and truncations are symmetric") {
        std::mt19937_64 gen(7);
        std::uniform_int_distribution<long> idx(0, 60);
        for (const auto& id : all_classical()) {
            int calls = 0;
            const RecurrenceScheme base = classical_scheme(id);
            const RecurrenceScheme probe("probe", {}, 1, 1, [&](long m, long k, long N) {
                ++calls;
                return base.entry(m, k, N);
            });
            for (int t = 0; t < 10000; ++t) {
                const long m = idx(gen) - 5, k = idx(gen) - 5;
                const int before = calls;
                const double v = probe.entry(m, k, 20);
                if (m < 0 || k < 0 || std::abs(m - k) > 1) {
                    CHECK(v == 0.0);
                    CHECK(calls == before);
                }
            }
            for (long k = 0; k < 30; ++k) CHECK(base.entry(k + 1, k, 20) == base.entry(k, k + 1, 20));
        }
    }

    TEST_CASE("validation") {
        CHECK_THROWS_AS(validate({ClassicalKind::Wishart, -1.5}), InvalidArgument);
        CHECK_THROWS_AS(validate({ClassicalKind::Meixner, 1.0, 1.0}), InvalidArgument);
        CHECK_THROWS_AS(validate({ClassicalKind::Charlier, -1.0}), InvalidArgument);
        CHECK_THROWS_AS(classical_kind_from_name("hermite"), InvalidArgument);
        CHECK(classical_kind_from_name("meixner") == ClassicalKind::Meixner);
    }
}
