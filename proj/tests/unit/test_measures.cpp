#include "dpplab/error.hpp"
#include "dpplab/measures.hpp"

#include <doctest.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <functional>
#include <numbers>

using namespace dpplab;

namespace {

// integral over [lo, hi] of f(x) (x - lo)^ea (hi - x)^eb by QAWS.
double qaws(double lo, double hi, double ea, double eb, const std::function<double(double)>& f) {
    gsl_set_error_handler_off();
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(1000);
    gsl_integration_qaws_table* table = gsl_integration_qaws_table_alloc(ea, eb, 0, 0);
    gsl_function F;
    F.function = [](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); };
    F.params = const_cast<std::function<double(double)>*>(&f);
    double result = 0, err = 0;
    gsl_integration_qaws(&F, lo, hi, table, 0.0, 1e-12, 1000, ws, &result, &err);
    gsl_integration_qaws_table_free(table);
    gsl_integration_workspace_free(ws);
    return result;
}

bool close(double x, double y, double rel) { return std::abs(x - y) <= rel * std::max(1.0, std::abs(y)); }

}  // namespace

TEST_SUITE("measures") {
    TEST_CASE("closed-form examples") {
        CHECK(arcsine_moment({3, 3}, 5) == doctest::Approx(243));
        CHECK(arcsine_moment({-2, 2}, 2) == doctest::Approx(2));
        CHECK(arcsine_moment({-2, 2}, 1) == doctest::Approx(0).epsilon(1e-15));
        CHECK(semicircle_moment(0) == 1);
        CHECK(semicircle_moment(2) == 1);
        CHECK(semicircle_moment(4) == 2);
        CHECK(semicircle_moment(6) == 5);
        CHECK(semicircle_moment(5) == 0);
        CHECK(mp_moment(1, 2) == doctest::Approx(2));
        CHECK(mp_moment(0, 3) == 0);
        CHECK(mp_moment(1, 3) == doctest::Approx(5));
        CHECK(mp_moment(0, 0) == 1);
        // Free Poisson with rate alpha: m_1 = alpha, m_2 = alpha + alpha^2.
        CHECK(mp_moment(2.5, 1) == doctest::Approx(2.5));
        CHECK(mp_moment(2.5, 2) == doctest::Approx(2.5 + 6.25));
    }

    TEST_CASE("density examples") {
        CHECK(density_eval(SemicircleLaw{}, 0.0) == doctest::Approx(1.0 / std::numbers::pi));
        CHECK(density_eval(ArcsineLaw{-2, 2}, 0.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
        CHECK(density_eval(MarchenkoPasturLaw{1}, 4.5) == 0.0);
        CHECK(density_eval(SemicircleLaw{}, 2.5) == 0.0);
    }

    TEST_CASE("semicircle and arcsine moments match quadrature against the weight") {
        const ArcsineLaw law{-0.5, 3.0};
        for (int l = 0; l <= 12; ++l) {
            const double sc = qaws(-2, 2, 0.5, 0.5, [l](double x) { return std::pow(x, l) / (2 * std::numbers::pi); });
            CHECK(close(semicircle_moment(l), sc, 1e-8));
            const double as = qaws(law.alpha, law.beta, -0.5, -0.5, [l](double x) { return std::pow(x, l) / std::numbers::pi; });
            CHECK(close(arcsine_moment(law, l), as, 1e-8));
        }
        for (double x : {-1.9, -0.3, 0.7, 1.5}) {
            CHECK(density_eval(SemicircleLaw{}, x) == doctest::Approx(std::sqrt((x + 2) * (2 - x)) / (2 * std::numbers::pi)));
            const double y = 0.75 * x + 1.25;
            CHECK(density_eval(law, y) == doctest::Approx(1 / (std::numbers::pi * std::sqrt((y - law.alpha) * (law.beta - y)))));
        }
    }

    TEST_CASE("free Poisson moments match quadrature plus atom") {
        for (double alpha : {0.3, 1.0, 2.0}) {
            const double lo = std::pow(1 - std::sqrt(alpha), 2), hi = std::pow(1 + std::sqrt(alpha), 2);
            double atom = 0;
            for (const Atom& a : atoms(MarchenkoPasturLaw{alpha})) {
                CHECK(a.location == 0.0);
                atom += a.weight;
            }
            CHECK(atom == doctest::Approx(std::max(1 - alpha, 0.0)));
            for (int l = 0; l <= 12; ++l) {
                const double q0 = alpha == 1.0
                                      ? qaws(0, hi, -0.5, 0.5, [l](double x) { return std::pow(x, l) / (2 * std::numbers::pi); })
                                      : qaws(lo, hi, 0.5, 0.5, [l](double x) { return std::pow(x, l - 1) / (2 * std::numbers::pi); });
                double q = q0;
                if (l == 0) q += atom;
                CHECK(close(mp_moment(alpha, l), q, 1e-8));
            }
        }
    }

    TEST_CASE("arcsine symmetry and relabeling") {
        for (int l = 0; l <= 9; ++l) {
            CHECK(arcsine_moment({1.5, -0.5}, l) == arcsine_moment({-0.5, 1.5}, l));
            if (l % 2) CHECK(arcsine_moment({-1.7, 1.7}, l) == doctest::Approx(0).epsilon(1e-14));
        }
    }

    TEST_CASE("kva mixture") {
        KVAMixture sc{[](double s) { return std::sqrt(s); }, [](double) { return 0.0; }};
        CHECK(kva_moment(sc, 2) == doctest::Approx(1).epsilon(1e-12));
        CHECK(kva_moment(sc, 4) == doctest::Approx(2).epsilon(1e-12));
        CHECK(kva_moment(sc, 6) == doctest::Approx(5).epsilon(1e-10));
        KVAMixture point{[](double) { return 0.0; }, [](double) { return 0.7; }};
        CHECK(kva_moment(point, 1) == doctest::Approx(0.7));
        KVAMixture constant{[](double) { return 0.4; }, [](double) { return -0.3; }};
        for (int l = 0; l <= 8; ++l)
            CHECK(kva_moment(constant, l) == doctest::Approx(arcsine_moment({-0.3 - 0.8, -0.3 + 0.8}, l)).epsilon(1e-13));
        // The GUE mixture of arcsine densities is the semicircle.
        for (double x : {0.0, 0.5, 1.3, 1.9})
            CHECK(density_eval(sc, x) == doctest::Approx(density_eval(SemicircleLaw{}, x)).epsilon(1e-6));
    }

    TEST_CASE("atomic measures and validation") {
        const std::vector<double> loc{1, -1}, w{0.5, 0.5};
        const MomentSequence m = AtomicMeasure(loc, w).moments(4);
        CHECK(m[2] == 1);
        CHECK(m[3] == 0);
        CHECK_THROWS_AS(AtomicMeasure(std::vector<Atom>{{0, 0.5}}), InvalidArgument);
        CHECK_THROWS_AS(MomentSequence({0.9, 1}), InvalidArgument);
        CHECK_THROWS_AS(semicircle_moment(-1), InvalidArgument);
        CHECK_THROWS_AS(mp_moment(-0.5, 2), InvalidArgument);
    }
}
