#include "dpplab/measures.hpp"

#include "dpplab/error.hpp"
#include "dpplab/quadrature.hpp"
#include "dpplab/summation.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace dpplab {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return std::round(c);
}

template <class F>
MomentSequence collect(int L, F&& moment) {
    require(L >= 0, "moment order must be >= 0");
    std::vector<double> v(L + 1);
    for (int ell = 0; ell <= L; ++ell) v[ell] = moment(ell);
    return MomentSequence(std::move(v));
}

}  // namespace

MomentSequence::MomentSequence(std::vector<double> values) : values_(std::move(values)) {
    require(!values_.empty(), "MomentSequence: needs at least m_0");
    for (double v : values_)
        if (!std::isfinite(v)) throw NumericalError("MomentSequence: non-finite moment");
    require(std::abs(values_[0] - 1.0) <= 1e-12, "MomentSequence: m_0 must equal 1");
    values_[0] = 1.0;
}

MomentSequence MomentSequence::truncated(int L) const {
    require(L >= 0 && L <= order(), "MomentSequence::truncated: order out of range");
    return MomentSequence(std::vector<double>(values_.begin(), values_.begin() + L + 1));
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    require(!atoms_.empty(), "AtomicMeasure: no atoms");
    double total = 0.0;
    for (const Atom& a : atoms_) {
        require(std::isfinite(a.location), "AtomicMeasure: non-finite location");
        require(a.weight > 0.0, "AtomicMeasure: weights must be positive");
        total += a.weight;
    }
    require(std::abs(total - 1.0) <= 1e-12, "AtomicMeasure: weights must sum to 1");
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        for (std::size_t j = i + 1; j < atoms_.size(); ++j)
            require(atoms_[i].location != atoms_[j].location, "AtomicMeasure: repeated location");
}

AtomicMeasure::AtomicMeasure(std::span<const double> locations, std::span<const double> weights)
    : AtomicMeasure([&] {
          require(locations.size() == weights.size(), "AtomicMeasure: locations/weights size mismatch");
          std::vector<Atom> v;
          for (std::size_t i = 0; i < locations.size(); ++i) v.push_back({locations[i], weights[i]});
          return v;
      }()) {}

MomentSequence AtomicMeasure::moments(int L) const {
    return collect(L, [&](int ell) {
        CompensatedSum s;
        for (const Atom& a : atoms_) s.add(a.weight * std::pow(a.location, ell));
        return ell == 0 ? 1.0 : s.value();
    });
}

double arcsine_moment(const ArcsineLaw& law, int ell) {
    require(ell >= 0, "arcsine_moment: ell must be >= 0");
    const double lo = std::min(law.alpha, law.beta);
    const double hi = std::max(law.alpha, law.beta);
    const double c = 0.5 * (lo + hi);
    const double half_rho = 0.25 * (hi - lo);
    // cos substitution: x = c + rho cos(t), E[cos^{2j}] = C(2j, j) / 4^j.
    CompensatedSum s;
    for (int j = 0; 2 * j <= ell; ++j)
        s.add(binomial(ell, 2 * j) * binomial(2 * j, j) * std::pow(c, ell - 2 * j) * std::pow(half_rho, 2 * j));
    return s.value();
}

double semicircle_moment(int ell) {
    require(ell >= 0, "semicircle_moment: ell must be >= 0");
    if (ell % 2) return 0.0;
    const int p = ell / 2;
    return binomial(2 * p, p) / (p + 1);
}

double mp_moment(double alpha, int ell) {
    require(alpha >= 0.0, "mp_moment: alpha must be >= 0");
    require(ell >= 0, "mp_moment: ell must be >= 0");
    if (ell == 0) return 1.0;
    // Narayana polynomial: sum_k N(ell, k) alpha^k.
    CompensatedSum s;
    for (int k = 1; k <= ell; ++k)
        s.add(binomial(ell, k) * binomial(ell, k - 1) / ell * std::pow(alpha, k));
    return s.value();
}

double kva_moment(const KVAMixture& mix, int ell) {
    require(ell >= 0, "kva_moment: ell must be >= 0");
    require(mix.quadrature_order >= 1, "kva_moment: quadrature order must be >= 1");
    require(static_cast<bool>(mix.a) && static_cast<bool>(mix.b), "kva_moment: a(s) and b(s) required");
    const QuadratureRule rule = gauss_legendre(mix.quadrature_order, 0.0, 1.0);
    CompensatedSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double a = mix.a(rule.nodes[i]);
        const double b = mix.b(rule.nodes[i]);
        s.add(rule.weights[i] * arcsine_moment({b - 2.0 * a, b + 2.0 * a}, ell));
    }
    return s.value();
}

MomentSequence arcsine_moments(const ArcsineLaw& law, int L) {
    return collect(L, [&](int ell) { return arcsine_moment(law, ell); });
}
MomentSequence semicircle_moments(int L) { return collect(L, semicircle_moment); }
MomentSequence mp_moments(double alpha, int L) {
    return collect(L, [&](int ell) { return mp_moment(alpha, ell); });
}
MomentSequence kva_moments(const KVAMixture& mix, int L) {
    return collect(L, [&](int ell) { return ell == 0 ? 1.0 : kva_moment(mix, ell); });
}

double density_eval(const SemicircleLaw&, double x) {
    if (std::abs(x) >= 2.0) return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

double density_eval(const ArcsineLaw& law, double x) {
    const double lo = std::min(law.alpha, law.beta);
    const double hi = std::max(law.alpha, law.beta);
    if (!(x > lo && x < hi)) return 0.0;
    return 1.0 / (std::numbers::pi * std::sqrt((hi - x) * (x - lo)));
}

double density_eval(const MarchenkoPasturLaw& law, double x) {
    require(law.alpha >= 0.0, "MarchenkoPasturLaw: alpha must be >= 0");
    const double r = std::sqrt(law.alpha);
    const double lo = (1.0 - r) * (1.0 - r);
    const double hi = (1.0 + r) * (1.0 + r);
    if (!(x > lo && x < hi) || x <= 0.0) return 0.0;
    return std::sqrt((hi - x) * (x - lo)) / (2.0 * std::numbers::pi * x);
}

double density_eval(const KVAMixture& mix, double x) {
    struct Ctx {
        const KVAMixture* mix;
        double x;
    } ctx{&mix, x};
    gsl_function f;
    f.function = [](double s, void* p) {
        const auto* c = static_cast<const Ctx*>(p);
        const double a = std::abs(c->mix->a(s));
        const double b = c->mix->b(s);
        return a > 0.0 ? density_eval(ArcsineLaw{b - 2.0 * a, b + 2.0 * a}, c->x) : 0.0;
    };
    f.params = &ctx;

    gsl_error_handler_t* old = gsl_set_error_handler_off();
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
        gsl_integration_workspace_alloc(2000), &gsl_integration_workspace_free);
    double result = 0.0, abserr = 0.0;
    // Integrable inverse-square-root singularities in s; the extrapolating rule
    // copes with them. Failure codes still leave the best estimate in `result`.
    gsl_integration_qags(&f, 0.0, 1.0, 1e-12, 1e-8, 2000, ws.get(), &result, &abserr);
    gsl_set_error_handler(old);
    return result;
}

std::vector<Atom> atoms(const SemicircleLaw&) { return {}; }

std::vector<Atom> atoms(const ArcsineLaw& law) {
    if (law.alpha == law.beta) return {{law.alpha, 1.0}};
    return {};
}

std::vector<Atom> atoms(const MarchenkoPasturLaw& law) {
    if (law.alpha < 1.0) return {{0.0, 1.0 - law.alpha}};
    return {};
}

}  // namespace dpplab
