#include "dpplab/recurrence.hpp"

#include "dpplab/error.hpp"

#include <cmath>

namespace dpplab {

RecurrenceScheme::RecurrenceScheme(std::string name, std::map<std::string, double> params, int lower_band,
                                   int upper_band, EntryFunction entry)
    : name_(std::move(name)),
      params_(std::move(params)),
      lower_(lower_band),
      upper_(upper_band),
      entry_(std::move(entry)) {
    require(lower_ >= 0, "RecurrenceScheme: lower band must be >= 0");
    require(upper_ >= 1, "RecurrenceScheme: upper band must be >= 1");
    require(static_cast<bool>(entry_), "RecurrenceScheme: missing entry function");
}

ClassicalKind classical_kind_from_name(const std::string& name) {
    if (name == "gue") return ClassicalKind::Gue;
    if (name == "wishart") return ClassicalKind::Wishart;
    if (name == "jacobi") return ClassicalKind::Jacobi;
    if (name == "charlier") return ClassicalKind::Charlier;
    if (name == "meixner") return ClassicalKind::Meixner;
    throw InvalidArgument("unknown ensemble '" + name + "'");
}

std::string to_string(ClassicalKind kind) {
    switch (kind) {
        case ClassicalKind::Gue: return "gue";
        case ClassicalKind::Wishart: return "wishart";
        case ClassicalKind::Jacobi: return "jacobi";
        case ClassicalKind::Charlier: return "charlier";
        case ClassicalKind::Meixner: return "meixner";
    }
    return "?";
}

void validate(const ClassicalEnsembleId& id) {
    const double a = id.alpha, b = id.beta;
    switch (id.kind) {
        case ClassicalKind::Gue: return;
        case ClassicalKind::Wishart: require(a > -1.0, "wishart: alpha must be > -1"); return;
        case ClassicalKind::Jacobi: require(a > 0.0 && b > 0.0, "jacobi: alpha and beta must be > 0"); return;
        case ClassicalKind::Charlier: require(a > 0.0, "charlier: alpha must be > 0"); return;
        case ClassicalKind::Meixner:
            require(a > 0.0 && a < 1.0, "meixner: alpha must lie in (0, 1)");
            require(b > 0.0, "meixner: beta must be > 0");
            return;
    }
}

double classical_a_squared(const ClassicalEnsembleId& id, long k, long N) {
    if (k <= 0) return 0.0;
    const double s = static_cast<double>(k) / N;
    const double a = id.alpha, b = id.beta;
    switch (id.kind) {
        case ClassicalKind::Gue: return s;
        case ClassicalKind::Wishart: return s * (s + a);
        case ClassicalKind::Jacobi: {
            const double t = 2.0 * s + a + b;
            const double invN = 1.0 / N;
            return 4.0 * s * (s + a) * (s + b) * (s + a + b) / (t * t * (t * t - invN * invN));
        }
        case ClassicalKind::Charlier: return a * s;
        case ClassicalKind::Meixner:
            // Includes the factor alpha of the Meixner recurrence, so that the
            // Jacobi matrix reproduces the negative-binomial moments.
            return a / ((1.0 - a) * (1.0 - a)) * s * (s + b - 1.0 / N);
    }
    return 0.0;
}

double classical_b(const ClassicalEnsembleId& id, long k, long N) {
    const double s = static_cast<double>(k) / N;
    const double a = id.alpha, b = id.beta;
    switch (id.kind) {
        case ClassicalKind::Gue: return 0.0;
        case ClassicalKind::Wishart: return (2.0 * k + 1.0) / N + a;
        case ClassicalKind::Jacobi:
            return (b * b - a * a) / ((2.0 * s + a + b) * (2.0 * (k + 1.0) / N + a + b));
        case ClassicalKind::Charlier: return a + s;
        case ClassicalKind::Meixner: return (s + a * (s + b)) / (1.0 - a);
    }
    return 0.0;
}

RecurrenceScheme classical_scheme(const ClassicalEnsembleId& id) {
    validate(id);
    std::map<std::string, double> params;
    if (id.kind != ClassicalKind::Gue) params["alpha"] = id.alpha;
    if (id.kind == ClassicalKind::Jacobi || id.kind == ClassicalKind::Meixner) params["beta"] = id.beta;
    auto entry = [id](long m, long k, long N) -> double {
        if (m == k) return classical_b(id, k, N);
        const long upper = std::max(m, k);  // a_{upper} couples P_{upper-1} and P_upper
        return std::sqrt(classical_a_squared(id, upper, N));
    };
    return RecurrenceScheme(to_string(id.kind), std::move(params), 1, 1, entry);
}

RecurrenceCoefficients coeff(const RecurrenceScheme& scheme, long k, long N) {
    require(scheme.is_tridiagonal(), "coeff: scheme '" + scheme.name() + "' is not tridiagonal");
    require(k >= 0, "coeff: k must be >= 0");
    return {k == 0 ? 0.0 : scheme.entry(k - 1, k, N), scheme.entry(k, k, N)};
}

KVAMixture kva_functions(const ClassicalEnsembleId& id) {
    validate(id);
    const double a = id.alpha, b = id.beta;
    KVAMixture mix;
    switch (id.kind) {
        case ClassicalKind::Gue:
            mix.a = [](double s) { return std::sqrt(s); };
            mix.b = [](double) { return 0.0; };
            break;
        case ClassicalKind::Wishart:
            mix.a = [a](double s) { return std::sqrt(s * (s + a)); };
            mix.b = [a](double s) { return 2.0 * s + a; };
            break;
        case ClassicalKind::Jacobi:
            mix.a = [a, b](double s) {
                const double t = 2.0 * s + a + b;
                return std::sqrt(4.0 * s * (s + a) * (s + b) * (s + a + b)) / (t * t);
            };
            mix.b = [a, b](double s) {
                const double t = 2.0 * s + a + b;
                return (b * b - a * a) / (t * t);
            };
            break;
        case ClassicalKind::Charlier:
            mix.a = [a](double s) { return std::sqrt(a * s); };
            mix.b = [a](double s) { return a + s; };
            break;
        case ClassicalKind::Meixner:
            mix.a = [a, b](double s) { return std::sqrt(a * s * (s + b)) / (1.0 - a); };
            mix.b = [a, b](double s) { return (s + a * (s + b)) / (1.0 - a); };
            break;
    }
    return mix;
}

}  // namespace dpplab
