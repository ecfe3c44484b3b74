#pragma once

#include "dpplab/measures.hpp"

#include <functional>
#include <map>
#include <string>

namespace dpplab {

/// entry(m, k, N): coefficient of P_m in the expansion of x P_k (column = input degree).
using EntryFunction = std::function<double(long m, long k, long N)>;

/// Supplier of the multiplication-operator matrix entries <x P_k, Q_m>, with
/// declared lower band R and upper band q. Entries outside [k - R, k + q] or
/// with a negative index are zero and the entry function is never consulted
/// for them.
class RecurrenceScheme {
public:
    RecurrenceScheme(std::string name, std::map<std::string, double> params, int lower_band, int upper_band,
                     EntryFunction entry);

    double entry(long m, long k, long N) const {
        if (m < 0 || k < 0 || m > k + upper_ || m < k - lower_) return 0.0;
        return entry_(m, k, N);
    }

    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }
    int lower_band() const { return lower_; }
    int upper_band() const { return upper_; }
    bool is_tridiagonal() const { return lower_ == 1 && upper_ == 1; }

private:
    std::string name_;
    std::map<std::string, double> params_;
    int lower_;
    int upper_;
    EntryFunction entry_;
};

enum class ClassicalKind { Gue, Wishart, Jacobi, Charlier, Meixner };

/// One of the classical OP ensembles with its parameters. Unused parameters are ignored.
struct ClassicalEnsembleId {
    ClassicalKind kind = ClassicalKind::Gue;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Parses "gue" | "wishart" | "jacobi" | "charlier" | "meixner".
ClassicalKind classical_kind_from_name(const std::string& name);
std::string to_string(ClassicalKind kind);

/// Throws InvalidArgument when the parameters are outside the ensemble's range.
void validate(const ClassicalEnsembleId& id);

/// Squared off-diagonal a_{k,N}^2 and diagonal b_{k,N} of the rescaled classical OPs.
double classical_a_squared(const ClassicalEnsembleId& id, long k, long N);
double classical_b(const ClassicalEnsembleId& id, long k, long N);

/// Symmetric tridiagonal (orthonormal) scheme for a classical ensemble.
RecurrenceScheme classical_scheme(const ClassicalEnsembleId& id);

struct RecurrenceCoefficients {
    double a;  // a_{k,N} >= 0, zero at k = 0
    double b;  // b_{k,N}
};

RecurrenceCoefficients coeff(const RecurrenceScheme& scheme, long k, long N);

/// Limits s = k/N of the recurrence coefficients, packaged as a mixture whose
/// moments are the limiting zero distribution.
KVAMixture kva_functions(const ClassicalEnsembleId& id);

}  // namespace dpplab
